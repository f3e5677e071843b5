"""
Generate virtual doc files for the API reference

One page per module, each package page starting with a table of its sub-modules.

All credit to the creators of:
https://oprypin.github.io/mkdocs-gen-files/
and the docs at:
https://mkdocstrings.github.io/crystal/quickstart/migrate.html
"""

from __future__ import annotations

import importlib
import inspect
import pkgutil
from pathlib import Path
from types import ModuleType

import mkdocs_gen_files
from attrs import frozen

ROOT_DIR = Path("api")
PACKAGE_NAME_ROOT = "dissipative_observables"
nav = mkdocs_gen_files.Nav()


@frozen
class ModuleSummary:
    """
    What a parent page needs to know about a module
    """

    full_name: str
    stem: str
    summary: str


def first_docstring_line(module: ModuleType) -> str:
    """Summary line of a module's docstring (empty if there is none)"""
    doc = inspect.getdoc(module)
    if not doc:
        return ""

    return doc.splitlines()[0]


def page_path(full_name: str) -> Path:
    """Path of the page of a module"""
    return ROOT_DIR.joinpath(*full_name.split(".")) / "index.md"


def sub_modules_table(sub_modules: list[ModuleSummary]) -> str:
    """Markdown table linking to the sub-modules of a package"""
    rows = [
        "| Sub-module | Description |",
        "| ---------- | ----------- |",
        *(f"| [{v.stem}][{v.full_name}] | {v.summary} |" for v in sub_modules),
    ]

    return "\n".join(rows)


def write_page(full_name: str) -> ModuleSummary:
    """
    Write the page of a module and, recursively, of its sub-modules
    """
    module = importlib.import_module(full_name)
    sub_modules = [
        write_page(f"{full_name}.{name}")
        for _, name, _ in pkgutil.iter_modules(getattr(module, "__path__", []))
    ]

    write_file = page_path(full_name)
    nav[full_name.split(".")] = write_file.relative_to(
        ROOT_DIR / PACKAGE_NAME_ROOT
    ).as_posix()

    with mkdocs_gen_files.open(write_file, "w") as fh:
        fh.write(f"# {full_name}\n\n")
        if sub_modules:
            fh.write(f"{sub_modules_table(sub_modules)}\n\n")

        fh.write(f"::: {full_name}")

    return ModuleSummary(
        full_name=full_name,
        stem=full_name.split(".")[-1],
        summary=first_docstring_line(module),
    )


write_page(PACKAGE_NAME_ROOT)
with mkdocs_gen_files.open(ROOT_DIR / PACKAGE_NAME_ROOT / "NAVIGATION.md", "w") as fh:
    fh.writelines(nav.build_literate_nav())
