"""
Pydantic schemas for qpsym input files.
"""

from .flow_spec import FlowSpecSchema

__all__ = ["FlowSpecSchema"]
