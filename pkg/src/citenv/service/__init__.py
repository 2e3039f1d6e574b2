"""HTTP service layer: pydantic request/response models and the FastAPI app.

Import :func:`citenv.service.app.create_app` directly for the application
factory; only the wire models are re-exported here to keep the dependency
graph acyclic (the pipeline consumes these models too).
"""

from .schemas import EnvironmentPayload, EnvironmentRequest, FactorPayload, FactorRequest

__all__ = ["EnvironmentRequest", "EnvironmentPayload", "FactorRequest", "FactorPayload"]
