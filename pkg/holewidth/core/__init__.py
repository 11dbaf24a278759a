from .graph import Graph, complement, cycle_graph, induced_subgraph, relation_between
from .patterns import find_hole, find_induced, is_class_member

__all__ = ['Graph', 'complement', 'cycle_graph', 'induced_subgraph', 'relation_between',
           'find_hole', 'find_induced', 'is_class_member']
