# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#       jupytext_version: 1.16.4
#   kernelspec:
#     display_name: Python 3 (ipykernel)
#     language: python
#     name: python3
# ---

# %% [markdown] editable=true slideshow={"slide_type": ""}
# # How to check a model
#
# Every bundled model knows some of its results in closed form,
# e.g. Λ♯_t(σ1) = e^{-γt} σ1 for the dephasing qubit.
# Here we show how to compare the numerics against all of them at once.

# %% editable=true slideshow={"slide_type": ""}
import pandas as pd

from dissipative_observables.models import MODEL_REGISTRY, build_model
from dissipative_observables.validation.error_catching import CheckResultsStoreError
from dissipative_observables.validation.model import get_validate_model_result

# %% [markdown] editable=true slideshow={"slide_type": ""}
# ## Available models

# %% editable=true slideshow={"slide_type": ""}
pd.DataFrame(
    [
        {"name": name, "description": entry.description, "overrides": entry.overrides}
        for name, entry in MODEL_REGISTRY.items()
    ]
)

# %% [markdown] editable=true slideshow={"slide_type": ""}
# ## Running the checks
#
# The checks never stop at the first failure.
# Each result records whether it passed and the largest deviation it found.

# %% editable=true slideshow={"slide_type": ""}
model = build_model("pure-decoherence", rates=[1.0, 2.0, 3.0])
results = get_validate_model_result(model, seed=0)
pd.DataFrame(results.to_frame_records())

# %% [markdown] editable=true slideshow={"slide_type": ""}
# ## Turning failures into an error
#
# `raise_if_errors` raises a `CheckResultsStoreError`
# summarising every failing check.

# %% editable=true slideshow={"slide_type": ""}
try:
    results.raise_if_errors()
except CheckResultsStoreError as exc:
    print(exc)
else:
    print(f"All checks passed, max deviation {results.max_deviation:.2e}")

# %% [markdown] editable=true slideshow={"slide_type": ""}
# ## From the command line
#
# The same checks are run by
#
# ```sh
# dissipative-observables verify --model pure-decoherence --rates 1,2,3
# ```
#
# which exits with code 1 if any check fails.
# For the oscillators, `--truncation-pair` sets the two truncations compared
# to make sure the results converge as more Fock levels are kept.
