# Sphinx configuration for the Magnus Towers documentation.
import os
import sys

sys.path.insert(0, os.path.abspath(".."))

project = "Magnus Towers"
copyright = "2022, Team 4099"
author = "Team 4099 - The Falcons"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.autosummary",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
]

autodoc_member_order = "bysource"
napoleon_google_docstring = True

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
    "sympy": ("https://docs.sympy.org/latest/", None),
}

templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]
