"""Parse, lint, fix, segment and convert CoNLL-U treebanks of user-generated content."""

__version__ = "1.0.0"
