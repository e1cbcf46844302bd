"""Shared exception types."""


class StlabError(Exception):
    """Base class for all package errors."""


class ConfigError(StlabError):
    """Invalid run configuration (bad flag value or combination)."""


class BudgetExceededError(StlabError):
    """An enumeration or construction would exceed its configured budget."""


class NotABasisError(StlabError):
    """An operation required a basis of the ambient space."""


class SplittingError(StlabError):
    """A proposed list of parts is not a symplectic splitting."""


class RankEngineError(StlabError):
    """Modular rank engines disagreed or saturation failed; rerun in exact mode."""


class RelationCheckError(StlabError):
    """A randomized apartment-relation check found a counterexample."""
