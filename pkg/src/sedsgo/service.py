"""Stateless JSON evaluation service.

Three endpoints: POST /api/evaluate solves a position and returns the
full state (point ownership, block strengths, score, iteration counts),
POST /api/rank returns every legal move ranked for the given mover, and
GET /api/health reports the version and default solver settings.

Every request carries the complete position; the server keeps no game
state, so any request sequence permutation yields identical responses
and the numbers are bit-equal to direct library calls.  Because no
history is kept, a client replaying a game supplies the current ko
point (if any) itself; /api/rank then withholds that recapture from
the mover.  /api/evaluate ignores it, ko never affects the solve.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Literal, Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .analysis import instability_map, percentile_of, rank_moves, score
from .goboard import (
    BadCoord,
    Board,
    Color,
    Coord,
    OverlappingStones,
    ZeroLibertyBlock,
    build_position,
)
from .seds import AtariAdjustment, SolverConfig, init_state, solve

__all__ = ["app", "create_app", "MAX_BODY_BYTES"]

MAX_BODY_BYTES = 64 * 1024


class ApiError(Exception):
    def __init__(self, status: int, error: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.error = error
        self.detail = detail


class CoordModel(BaseModel):
    col: int
    row: int


class ConfigModel(BaseModel):
    stop_value: Optional[float] = None
    max_iter: Optional[int] = None
    atari_adjustment: Optional[
        Literal["multi_liberty_only", "always", "off"]
    ] = None


class PositionPayload(BaseModel):
    size: int
    black: list[CoordModel] = Field(default_factory=list)
    white: list[CoordModel] = Field(default_factory=list)
    mover: Optional[Literal["black", "white"]] = None
    # point the mover may not retake this turn (simple ko)
    ko: Optional[CoordModel] = None
    config: Optional[ConfigModel] = None


def _solver_config(payload: PositionPayload) -> SolverConfig:
    overrides = payload.config
    defaults = SolverConfig()
    if overrides is None:
        return defaults
    try:
        return SolverConfig(
            stop_value=(
                overrides.stop_value
                if overrides.stop_value is not None
                else defaults.stop_value
            ),
            max_iter=(
                overrides.max_iter
                if overrides.max_iter is not None
                else defaults.max_iter
            ),
            atari_adjustment=(
                AtariAdjustment(overrides.atari_adjustment)
                if overrides.atari_adjustment is not None
                else defaults.atari_adjustment
            ),
        )
    except ValueError as e:
        raise ApiError(422, "ConfigOutOfRange", str(e)) from None


def _board(payload: PositionPayload) -> Board:
    black = [Coord(c.col, c.row) for c in payload.black]
    white = [Coord(c.col, c.row) for c in payload.white]
    try:
        return build_position(payload.size, black, white)
    except (BadCoord, OverlappingStones, ZeroLibertyBlock) as e:
        raise ApiError(400, type(e).__name__, str(e)) from None


def _coord_json(board: Board, idx: int) -> dict:
    c = board.coord(idx)
    return {"col": c.col, "row": c.row}


def _config_json(config: SolverConfig) -> dict:
    return {
        "stop_value": config.stop_value,
        "max_iter": config.max_iter,
        "atari_adjustment": config.atari_adjustment.value,
    }


def create_app() -> FastAPI:
    app = FastAPI(title="sedsgo", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content={"error": exc.error, "detail": exc.detail},
        )

    @app.middleware("http")
    async def _limit_body(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and int(length) > MAX_BODY_BYTES:
            return JSONResponse(
                status_code=413,
                content={
                    "error": "PayloadTooLarge",
                    "detail": f"request body exceeds {MAX_BODY_BYTES} bytes",
                },
            )
        return await call_next(request)

    @app.get("/api/health")
    async def health() -> dict:
        return {
            "version": __version__,
            "default_config": _config_json(SolverConfig()),
        }

    @app.post("/api/evaluate")
    async def evaluate(payload: PositionPayload) -> dict:
        config = _solver_config(payload)
        board = _board(payload)
        state, stats = solve(board, init_state(board), config)
        imap = instability_map(board, stats)
        points = [
            {
                "col": board.coord(p).col,
                "row": board.coord(p).row,
                "w": state.w[p],
                "iterations": stats.iterations.get(p, 0),
                "instability": imap.aggregate[p],
            }
            for p in sorted(state.w)
        ]
        blocks = [
            {
                "id": blk.id,
                "color": "black" if blk.color is Color.BLACK else "white",
                "s": state.s[blk.id],
                "statically_alive": blk.statically_alive,
                "iterations": stats.iterations.get(board.block_unit(blk.id), 0),
                "stones": [_coord_json(board, p) for p in sorted(blk.stones)],
            }
            for blk in sorted(board.blocks.values(), key=lambda b: b.id)
        ]
        sc = score(board, state)
        return {
            "size": board.size,
            "points": points,
            "blocks": blocks,
            "score": {
                "black_total": sc.black_total,
                "white_total": sc.white_total,
                "net": sc.net,
            },
            "converged": stats.converged,
            "config": _config_json(config),
        }

    @app.post("/api/rank")
    async def rank(payload: PositionPayload) -> dict:
        if payload.mover is None:
            raise ApiError(422, "MissingMover", "rank requires a mover")
        config = _solver_config(payload)
        board = _board(payload)
        mover = Color.BLACK if payload.mover == "black" else Color.WHITE
        if payload.ko is not None:
            k = Coord(payload.ko.col, payload.ko.row)
            inside = 0 <= k.col < board.size and 0 <= k.row < board.size
            if not inside or board.grid[board.index(k)] != -1:
                raise ApiError(
                    400, "BadKoPoint", f"ko point {k} is not an empty board point"
                )
            board = replace(board, ko_point=board.index(k), ko_color=mover)
        state, stats = solve(board, init_state(board), config)
        imap = instability_map(board, stats)
        ranking = rank_moves(board, mover, config)
        moves = [
            {
                "col": coord.col,
                "row": coord.row,
                "score": value,
                "percentile": percentile_of(ranking, coord),
                "instability": imap.aggregate[board.index(coord)],
            }
            for coord, value in ranking.entries
        ]
        sc = score(board, state)
        return {
            "size": board.size,
            "mover": payload.mover,
            "moves": moves,
            "score": {
                "black_total": sc.black_total,
                "white_total": sc.white_total,
                "net": sc.net,
            },
            "config": _config_json(config),
        }

    return app


app = create_app()
