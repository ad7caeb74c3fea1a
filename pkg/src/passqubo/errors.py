"""Exception types shared across the package.

DataError covers conditions caused by the data handed to us (empty corpora,
out-of-vocabulary characters, impossible vocabulary sizes). The CLI maps these
to exit code 2; genuine misuse of an API (bad shapes, bad indices) raises
ValueError as usual.
"""


class DataError(Exception):
    """A computation failed because of the supplied data, not the caller's code."""


class EmptyCorpusError(DataError):
    """Filtering left no usable passwords."""


class OutOfVocabularyError(DataError):
    """A password contains a character the vocabulary cannot represent."""


class VocabularySizeError(DataError):
    """The requested vocabulary size cannot be met by the training corpus."""
