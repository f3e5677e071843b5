"""
Test that an installation works

Every module must import, the model registry must be populated
and the smallest model must pass its checks.
"""

import importlib
import pkgutil

import dissipative_observables
from dissipative_observables.models import MODEL_REGISTRY, build_model
from dissipative_observables.validation.model import get_validate_model_result


def import_submodules(package_name):
    """
    Import a package and, recursively, all its submodules
    """
    package = importlib.import_module(package_name)

    for _, name, is_pkg in pkgutil.walk_packages(package.__path__):
        full_name = package.__name__ + "." + name
        importlib.import_module(full_name)
        if is_pkg:
            import_submodules(full_name)


import_submodules("dissipative_observables")

assert MODEL_REGISTRY, "No models registered"
get_validate_model_result(build_model("qubit-dephasing")).raise_if_errors()

print(dissipative_observables.__version__)
