from .spec import NetworkSpec, build_network, parse_spec
from .manager import main

__all__ = ["NetworkSpec", "build_network", "parse_spec", "main"]
