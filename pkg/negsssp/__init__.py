__version__ = "0.2"

from .graph import DirectedGraph, PriceFunction, VertexSet, EdgeSet
from .oracle import OracleStats
from .solver import sp_main, sp_main_with_retries
from .negcycle import CycleWitness, solve
