"""Finite checks with three-valued reports (VIOLATED / CONSISTENT(radius) / INCONCLUSIVE)."""
from .audit import AUDITS, audit_hypotheses
from .fourwheel import DiagramNotTree, check_4wheel
from .gauss_bonnet import DiskDiagram, Face, InvalidEmbedding, gauss_bonnet
from .helly import check_helly, girth_report, shortest_cycle
from .homomorphism import TargetNotSpherical, f4_to_e6, verify_homomorphism
from .posets import (FLAG_MODES, OrderedVertexView, check_bowtie_free, check_flag, check_order,
                     order_relation, thicken)
from .replay import ReplayError, replay_witness
from .report import CONSISTENT, EXIT_CODES, INCONCLUSIVE, VIOLATED, CheckReport, combine
from .subdivide import ShapeMismatch, SubdividedBall, subdivide

__all__ = [
    "AUDITS", "audit_hypotheses", "DiagramNotTree", "check_4wheel", "DiskDiagram", "Face",
    "InvalidEmbedding", "gauss_bonnet", "check_helly", "girth_report", "shortest_cycle",
    "TargetNotSpherical", "f4_to_e6", "verify_homomorphism", "FLAG_MODES", "OrderedVertexView",
    "check_bowtie_free", "check_flag", "check_order", "order_relation", "thicken", "ReplayError",
    "replay_witness", "CONSISTENT", "EXIT_CODES", "INCONCLUSIVE", "VIOLATED", "CheckReport", "combine",
    "ShapeMismatch", "SubdividedBall", "subdivide",
]
