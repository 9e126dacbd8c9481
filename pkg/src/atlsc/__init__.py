"""Model checking strategy logic with partial observation on finite concurrent games."""

from .formula import Formula
from .game import Cgso, KripkeStructure, ObservationPartition, is_uniform, to_turn_based, validate
from .gamefile import load_game, load_kripke, parse_game, parse_kripke
from .qctl import check_ctlstar, check_structure, find_witness
from .reductions import build_memoryless_reduction, build_uniform_reduction
from .strategies import StrategyContext, StrategyTable, check_memoryless, check_windowed, compose, pruned_system
from .syntax import parse_atlsc, parse_qctl, to_text

__all__ = [
    "Formula", "Cgso", "KripkeStructure", "ObservationPartition", "is_uniform", "to_turn_based",
    "validate", "load_game", "load_kripke", "parse_game", "parse_kripke", "check_ctlstar",
    "check_structure", "find_witness", "build_memoryless_reduction", "build_uniform_reduction",
    "StrategyContext", "StrategyTable", "check_memoryless", "check_windowed", "compose",
    "pruned_system", "parse_atlsc", "parse_qctl", "to_text",
]
