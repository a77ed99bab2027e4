#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# PyCCW documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

# Set up 'mock' modules, needed to build docs if numpy, numba etc., aren't installed
import mock
import importlib

MOCK_MODULES = ['numpy', 'numba', 'scipy', 'scipy.optimize', 'tqdm', 'pint']
for mod_name in MOCK_MODULES:
    try:
        importlib.import_module(mod_name)
    except ImportError:
        sys.modules[mod_name] = mock.Mock()

sys.path.insert(0, os.path.abspath(os.path.join('..', '..')))

import pyccw

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'PyCCW'
copyright = '2026, PyCCW developers'
author = 'PyCCW developers'

# The short X.Y version.
version = pyccw.__version__
# The full version, including alpha/beta/rc tags.
release = pyccw.__version__

language = None
exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'classic'
html_static_path = ['_static']
html_extra_path = ['layout_schema.json']
html_use_index = True
html_show_sphinx = True
html_show_copyright = True
htmlhelp_basename = 'PyCCWdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}

latex_documents = [
  (master_doc, 'PyCCW.tex', 'PyCCW Documentation',
   author, 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'pyccw', 'PyCCW Documentation',
     [author], 1)
]

# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
  (master_doc, 'PyCCW', 'PyCCW Documentation',
   author, 'PyCCW', 'Design tools for current carrying wire ion traps.',
   'Miscellaneous'),
]
