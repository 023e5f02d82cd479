"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration (bad topology, walk parameters, arm spec, ...)."""


class ContractError(RuntimeError):
    """A runtime contract was violated (signals a policy or orchestration bug)."""


class GuardError(ValueError):
    """A brute-force oracle was asked to enumerate too large an instance."""
