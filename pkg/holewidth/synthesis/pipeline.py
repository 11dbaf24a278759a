import logging
from typing import Optional, Tuple, Union

from ..config import HOLE_PREFERENCE, Settings
from ..core.graph import Graph
from ..core.patterns import Hole, find_hole, is_class_member
from ..decomposition.classify import Decomposition, classify
from ..errors import NotInClassError
from .cases import SYNTHESIZERS
from .results import PerfectCertificate, SynthesisResult

logger = logging.getLogger(__name__)


def choose_hole(g: Graph, preference: Tuple[int, ...] = HOLE_PREFERENCE) -> Optional[Hole]:
    """The first hole found, trying lengths in preference order."""
    for k in preference:
        hole = find_hole(g, k)
        if hole is not None:
            logger.info("found C%d %s", k, list(hole))
            return hole
    return None


def decompose_auto(g: Graph, settings: Optional[Settings] = None) -> Optional[Decomposition]:
    settings = settings or Settings()
    hole = choose_hole(g)
    if hole is None:
        return None
    return classify(g, hole, settings.threshold, settings.fixpoint_reduction)


def synthesize(g: Graph, settings: Optional[Settings] = None) -> Union[SynthesisResult, PerfectCertificate]:
    """Bounded-width expression for a class member, or a certificate that it has no C5, C6 or C7.

    Args:
        g (Graph): Input graph
        settings (Optional[Settings]): threshold and reduction mode

    Returns:
        Union[SynthesisResult, PerfectCertificate]: Expression with its case trace, or the certificate

    Raises:
        NotInClassError: g contains a claw, 4K1, bridge or C4-twin
    """
    witness = is_class_member(g).first_witness()
    if witness is not None:
        raise NotInClassError(witness)
    d = decompose_auto(g, settings)
    if d is None:
        logger.info("no C7, C6 or C5: perfect branch")
        return PerfectCertificate()
    synth = SYNTHESIZERS[d.hole_length]
    if d.hole_length == 7:
        return synth(g, d)
    # Longer holes were already ruled out by the preference order.
    return synth(g, d, check_longer_holes=False)
