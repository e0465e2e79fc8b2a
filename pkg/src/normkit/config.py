import os

DEFAULT_BUDGET = 10**6
DEFAULT_MORPHISM_BUDGET = 10**4
BUDGET_ENV = "NORMKIT_BUDGET"


def resolve_budget(budget=None):
    """Explicit argument, then ``$NORMKIT_BUDGET``, then the default."""
    if budget is not None:
        if budget <= 0:
            raise ValueError("budget must be positive")
        return budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError(f"{BUDGET_ENV} must be positive")
        return value
    return DEFAULT_BUDGET
