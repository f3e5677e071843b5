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
# # How to classify a contraction
#
# Here we show how to find the Lie algebra
# that a set of observables contracts to as t → ∞.
# We use the dephasing qubit, whose Pauli matrices span su(2) at t = 0.

# %% editable=true slideshow={"slide_type": ""}
import numpy as np

from dissipative_observables.contraction import classify_limit
from dissipative_observables.deformed import (
    asymptotic_structure_constants,
    default_schedule,
    deformed_algebra_context,
    deformed_commutator,
)
from dissipative_observables.models import build_model

# %% [markdown] editable=true slideshow={"slide_type": ""}
# ## Starting point
#
# A model bundles the generator with a canonical basis.
# You can also load your own generator from a JSON specification file
# with `dissipative_observables.io.load_lindblad_spec`.

# %% editable=true slideshow={"slide_type": ""}
model = build_model("qubit-dephasing", gamma=1.0)
generator_adjoint = model.generator_adjoint()
basis = model.canonical_basis
basis.labels

# %% [markdown] editable=true slideshow={"slide_type": ""}
# ## The deformed commutator at finite time
#
# At any finite time, the deformed commutator is defined
# as long as the propagator can be inverted.

# %% editable=true slideshow={"slide_type": ""}
ctx = deformed_algebra_context(generator_adjoint, basis, 1.0)
sigma1 = basis.element("sigma1")
sigma2 = basis.element("sigma2")
np.round(deformed_commutator(ctx, sigma1, sigma2), 6)

# %% [markdown] editable=true slideshow={"slide_type": ""}
# ## Extracting the limit
#
# The default schedule is chosen from the decay rates of the basis
# and stops before inverting the propagator becomes too ill-conditioned.

# %% editable=true slideshow={"slide_type": ""}
schedule = default_schedule(generator_adjoint, basis)
report = asymptotic_structure_constants(generator_adjoint, basis, schedule)
report.converged, report.final_delta

# %% [markdown] editable=true slideshow={"slide_type": ""}
# ## Classifying
#
# The limit is e(2): [σ1, σ2] has vanished
# while σ3 still rotates σ1 and σ2 into each other.

# %% editable=true slideshow={"slide_type": ""}
classification = classify_limit(report)
classification.label, classification.killing_signature

# %% [markdown] editable=true slideshow={"slide_type": ""}
# If the structure constants diverge, nothing is raised.
# Instead, the report lists the divergent entries and their growth rates
# and the classification is `unclassified`.
#
# The same analysis is available from the command line:
#
# ```sh
# dissipative-observables contract --model qubit-dephasing
# ```
