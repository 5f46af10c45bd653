"""
Base schema module.
"""
from pydantic import BaseModel, ConfigDict


class FrozenSchema(BaseModel):
    """Base schema for immutable value types."""

    model_config = ConfigDict(frozen=True)
