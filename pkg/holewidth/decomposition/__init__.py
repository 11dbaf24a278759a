from .classify import Decomposition, SetId, classify
from .properties import PropertyReport, verify_properties

__all__ = ['Decomposition', 'SetId', 'classify', 'PropertyReport', 'verify_properties']
