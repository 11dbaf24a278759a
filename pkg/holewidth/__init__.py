__version__ = '0.1.0'

from .config import Settings, load_settings
from .core.graph import Graph, complement, induced_subgraph, relation_between
from .core.patterns import find_hole, find_induced, is_class_member, is_perfect_in_class
from .decomposition.classify import Decomposition, classify
from .decomposition.properties import PropertyReport, verify_properties
from .expressions.cwd import evaluate, parse, serialize, width
from .synthesis.pipeline import synthesize
from .colouring.solver import colour_class_member, exact_chromatic, max_clique
from .generation.planter import PlantSpec, plant, reject_sample
from .errors import HolewidthError

__all__ = [
    'Settings', 'load_settings',
    'Graph', 'complement', 'induced_subgraph', 'relation_between',
    'find_hole', 'find_induced', 'is_class_member', 'is_perfect_in_class',
    'Decomposition', 'classify', 'PropertyReport', 'verify_properties',
    'evaluate', 'parse', 'serialize', 'width',
    'synthesize',
    'colour_class_member', 'exact_chromatic', 'max_clique',
    'PlantSpec', 'plant', 'reject_sample',
    'HolewidthError',
]
