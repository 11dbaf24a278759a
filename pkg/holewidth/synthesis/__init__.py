from .pipeline import synthesize
from .results import PerfectCertificate, SynthesisResult

__all__ = ['synthesize', 'PerfectCertificate', 'SynthesisResult']
