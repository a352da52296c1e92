import os
import sys

sys.path.insert(0, os.path.abspath(".."))

project = "qgroups"
extensions = ["sphinx.ext.autodoc"]
autodoc_member_order = "bysource"
html_theme = "alabaster"
