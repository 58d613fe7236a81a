# -*- coding: utf-8 -*-
#
# rsdlog documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import os
import sys

# The package is imported from the repository root.
sys.path.insert(0, os.path.abspath('../../'))
from rsdlog._meta import __author__, __copyright__, __version__


# -- General configuration -----------------------------------------------------

extensions = [
	'sphinx.ext.autodoc',
	'sphinx.ext.intersphinx',
	'sphinx.ext.mathjax',
	'sphinx.ext.viewcode',
]

intersphinx_mapping = {
	'numpy': ('https://numpy.org/doc/stable', None),
	'python': ('http://docs.python.org/3', None),
	'sympy': ('https://docs.sympy.org/latest', None),
}

autodoc_member_order = 'bysource'
autodoc_typehints = 'description'

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = "RS DLog"
copyright = __copyright__.split("©")[1].strip()

# The short X.Y version.
version = '.'.join(__version__.split('.', 2)[:2])
# The full version, including alpha/beta/rc tags.
release = __version__

language = "en"
exclude_patterns = []
pygments_style = 'sphinx'


# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'
html_theme_options = {
	'collapsiblesidebar': True
}
htmlhelp_basename = 'rsdlogdoc'


# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'rsdlog.tex', '{} Documentation'.format(project), __author__, 'manual'),
]


# -- Options for manual page output --------------------------------------------

man_pages = [
	('index', 'rsdlog', '{} Documentation'.format(project), __author__, 1),
]
