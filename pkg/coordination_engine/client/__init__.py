from .coordination_client import CoordinationClient

__all__ = ['CoordinationClient']
