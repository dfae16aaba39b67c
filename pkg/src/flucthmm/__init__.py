"""Fluctuation-series classification with per-class hidden Markov models.

The pipeline: unfold a 2-D scalar field row by row, z-score it, take the
cumulative sum, cut the walk into fixed-length windows, fit one
Gaussian-emission HMM per class with Baum-Welch, and classify held-out
windows by the largest per-class log-likelihood.
"""

from ._kernels import BACKEND_NAME, warmup
from .classifier import (
    ClassificationResult,
    ConfusionMatrix,
    ModelBank,
    classify,
    evaluate,
    label_seed,
    train_bank,
)
from .errors import (
    DegenerateVariance,
    EmptySequence,
    EmptyTestSet,
    EmptyTrainingSet,
    FluctHmmError,
    ImpossibleSequence,
    InstanceTooLarge,
    InvalidModel,
    InvalidObservation,
    LengthMismatch,
    MalformedInput,
    SequenceTooShort,
    StateStarvedWarning,
    TypeMismatch,
    Unclassifiable,
    UnknownLabel,
    WindowTooLong,
)
from .inference import (
    PosteriorStats,
    TrellisResult,
    backward,
    forward,
    log_likelihood,
    log_likelihood_logdomain,
    posteriors,
    viterbi,
)
from .model import DiscreteEmission, GaussianEmission, HmmModel, emission_density
from .preprocessing import (
    WindowingConfig,
    cumulative_sum,
    preprocess,
    unfold_horizontal,
    window,
    zscore,
)
from .serialize import load_bank, load_model, save_bank, save_model
from .synthetic import (
    SyntheticSpec,
    class_labels,
    make_separated_bank,
    sample_dataset,
    sample_sequence,
)
from .training import (
    RNG_ALGORITHM,
    TrainingConfig,
    TrainingReport,
    baum_welch,
    initialize_model,
    reestimate,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "ClassificationResult",
    "ConfusionMatrix",
    "DegenerateVariance",
    "DiscreteEmission",
    "EmptySequence",
    "EmptyTestSet",
    "EmptyTrainingSet",
    "FluctHmmError",
    "GaussianEmission",
    "HmmModel",
    "ImpossibleSequence",
    "InstanceTooLarge",
    "InvalidModel",
    "InvalidObservation",
    "LengthMismatch",
    "MalformedInput",
    "ModelBank",
    "PosteriorStats",
    "RNG_ALGORITHM",
    "SequenceTooShort",
    "StateStarvedWarning",
    "SyntheticSpec",
    "TrainingConfig",
    "TrainingReport",
    "TrellisResult",
    "TypeMismatch",
    "Unclassifiable",
    "UnknownLabel",
    "WindowTooLong",
    "WindowingConfig",
    "backward",
    "baum_welch",
    "class_labels",
    "classify",
    "cumulative_sum",
    "emission_density",
    "evaluate",
    "forward",
    "initialize_model",
    "label_seed",
    "load_bank",
    "load_model",
    "log_likelihood",
    "log_likelihood_logdomain",
    "make_separated_bank",
    "posteriors",
    "preprocess",
    "reestimate",
    "sample_dataset",
    "sample_sequence",
    "save_bank",
    "save_model",
    "train_bank",
    "unfold_horizontal",
    "viterbi",
    "warmup",
    "window",
    "zscore",
]
