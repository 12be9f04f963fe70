"""Static evaluation of Go positions via a dynamical system over points and blocks."""

__version__ = "0.1.0"

from .goboard import (
    BadCoord,
    Block,
    Board,
    Color,
    Coord,
    IllegalMove,
    MoveDelta,
    OverlappingStones,
    ZeroLibertyBlock,
    apply_move,
    benson_alive,
    build_position,
    legal_moves,
    random_position,
)
from .seds import (
    AtariAdjustment,
    DegenerateBars,
    NoConvergence,
    SedsState,
    SolveStats,
    SolverConfig,
    init_state,
    resolve_incremental,
    solve,
    solve_dense_oracle,
)
from .analysis import (
    InstabilityMap,
    MoveRanking,
    Score,
    UnknownMove,
    dipole_indicator,
    instability_map,
    percentile_of,
    quadrupole_indicator,
    rank_moves,
    score,
)
from .sgf import (
    GameRecord,
    IllegalRecordedMove,
    SgfSyntaxError,
    UnsupportedSize,
    emit_sgf,
    parse_sgf,
    replay,
)
from .bench import (
    CorpusStats,
    EmptyCorpus,
    PredictionHistogram,
    ProMoveIllegal,
    SurvivalCurve,
    TimingProfile,
    predict_rank,
    random_baseline,
    run_corpus,
    timing_profile,
)
