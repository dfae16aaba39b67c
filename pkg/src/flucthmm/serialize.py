"""JSON persistence for models, banks, and training reports.

Floats go through json's repr-based encoder, which round-trips every double
to the identical bit pattern, so reloaded models reproduce log-likelihoods
exactly.
"""

import json

from .classifier import ModelBank
from .errors import MalformedInput
from .model import DiscreteEmission, GaussianEmission, HmmModel

BANK_FORMAT = "flucthmm-model-bank"
BANK_VERSION = 1


def model_from_dict(doc) -> HmmModel:
    try:
        emission_doc = doc["emission"]
        kind = emission_doc["kind"]
        if kind == "gaussian":
            emission = GaussianEmission(emission_doc["means"], emission_doc["variances"])
        elif kind == "discrete":
            emission = DiscreteEmission(emission_doc["obs"])
        else:
            raise KeyError(f"unknown emission kind {kind!r}")
        model = HmmModel(doc["pi"], doc["trans"], emission)
    except (KeyError, TypeError) as exc:
        raise MalformedInput("<model document>", f"bad model document: {exc}") from exc
    if model.n_states != doc.get("n_states", model.n_states):
        raise MalformedInput(
            "<model document>",
            f"declared n_states {doc['n_states']} != actual {model.n_states}",
        )
    return model


def bank_to_dict(bank: ModelBank) -> dict:
    return {
        "format": BANK_FORMAT,
        "version": BANK_VERSION,
        "labels": bank.labels,
        "models": {label: model.to_dict() for label, model in bank.items()},
    }


def bank_from_dict(doc) -> ModelBank:
    if not isinstance(doc, dict) or doc.get("format") != BANK_FORMAT:
        raise MalformedInput("<bank document>", f"not a {BANK_FORMAT} document")
    labels = doc.get("labels", [])
    models = doc.get("models", {})
    if sorted(labels) != sorted(models):
        raise MalformedInput("<bank document>", "labels and models keys disagree")
    return ModelBank({label: model_from_dict(models[label]) for label in labels})


def save_bank(path, bank: ModelBank):
    with open(path, "w") as fh:
        json.dump(bank_to_dict(bank), fh, indent=2)
        fh.write("\n")


def load_bank(path) -> ModelBank:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MalformedInput(path, f"cannot read: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(path, f"invalid JSON: {exc.msg}", exc.pos) from exc
    try:
        return bank_from_dict(doc)
    except MalformedInput as exc:
        raise MalformedInput(path, exc.message, exc.offset) from exc


def save_model(path, model: HmmModel):
    with open(path, "w") as fh:
        json.dump(model.to_dict(), fh, indent=2)
        fh.write("\n")


def load_model(path) -> HmmModel:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MalformedInput(path, f"cannot read: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(path, f"invalid JSON: {exc.msg}", exc.pos) from exc
    return model_from_dict(doc)
