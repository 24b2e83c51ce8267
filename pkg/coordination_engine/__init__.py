"""
Coordination engine: behavioural automata for Reo connectors and Linda tuple spaces.
"""
__version__ = "0.1.0"
