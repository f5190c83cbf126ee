"""HTTP game service hosting live k-queue game sessions.

Plain JSON over HTTP with polling; the game is strictly turn-based and
Alice replies synchronously inside the bob-move response, so no push
channel is needed.  Sessions live in memory; finished traces can be
persisted to a directory.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import jsonio
from .analysis import max_rainbow
from .game import (
    AliceController,
    AliceMove,
    BobMove,
    GameAnomaly,
    GameState,
    GameTrace,
    IllegalMoveError,
    Outcome,
    alice_next,
    apply_alice_move,
    apply_bob_move,
    bob_next,
    default_round_cap,
    detect_rainbow,
    make_bob,
    new_game,
    BUILTIN_BOB_KINDS,
)
from .ordering import LinearOrder


class CreateSession(BaseModel):
    k: int = Field(ge=1, le=8)
    bob: str = "human"
    seed: int = 0
    cap: int | None = Field(default=None, ge=1)


class BobMoveRequest(BaseModel):
    pos: int


@dataclass
class SessionRecord:
    id: str
    k: int
    state: GameState
    controller: AliceController
    cap: int
    status: str = "open"  # open | finished
    outcome: Outcome | None = None
    moves: list = field(default_factory=list)
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)
    initial_order: tuple[str, ...] = ()


def _state_view(record: SessionRecord) -> dict:
    state = record.state
    order = list(state.order)
    edges = sorted(state.edges())
    size, witness = max_rainbow(LinearOrder(order), edges)
    pending = None
    if state.pending is not None:
        vertex, members = state.pending
        pending = {"v": vertex, "adjacent": list(members)}
    view = {
        "id": record.id,
        "k": record.k,
        "status": record.status,
        "round": state.round,
        "order": order,
        "edges": [list(e) for e in edges],
        "pending": pending,
        "gaps": state.n + 1,
        "rainbow": {
            "size": size,
            "target": record.k + 1,
            "witness": [list(e) for e in witness.edges],
        },
        "outcome": jsonio.outcome_to_dict(record.outcome) if record.outcome else None,
        "trace": jsonio.trace_to_dict(
            GameTrace(record.k, record.initial_order, tuple(record.moves), record.outcome)
        ),
    }
    return view


def _finish(record: SessionRecord, outcome: Outcome, trace_dir: str | None) -> None:
    record.status = "finished"
    record.outcome = outcome
    record.updated = time.time()
    if trace_dir:
        trace = GameTrace(record.k, record.initial_order, tuple(record.moves), outcome)
        path = Path(trace_dir) / f"{record.id}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        jsonio.dump_json(jsonio.trace_to_dict(trace), path)


def _alice_turn(record: SessionRecord, trace_dir: str | None) -> None:
    """Run Alice's reply; on anomaly the session finishes."""
    try:
        clique = alice_next(record.controller, record.state)
    except GameAnomaly as exc:
        _finish(record, Outcome("anomaly", record.state.round, description=str(exc)), trace_dir)
        return
    apply_alice_move(record.state, clique)
    record.moves.append(AliceMove(clique, record.state.pending[0]))


def create_app(cap: int | None = None, trace_dir: str | None = None,
               ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="qnlay game service")
    sessions: dict[str, SessionRecord] = {}
    registry_lock = threading.Lock()

    @app.post("/sessions", status_code=201)
    def create_session(request: CreateSession):
        if request.bob != "human" and request.bob not in BUILTIN_BOB_KINDS \
                and request.bob != "greedy":
            raise HTTPException(422, f"unknown bob strategy {request.bob!r}")
        session_cap = request.cap or cap or default_round_cap(request.k)
        state = new_game(request.k)
        try:
            controller = AliceController(request.k)
        except Exception as exc:
            raise HTTPException(422, str(exc))
        record = SessionRecord(
            id=uuid.uuid4().hex[:12],
            k=request.k,
            state=state,
            controller=controller,
            cap=session_cap,
            initial_order=tuple(state.order),
        )
        if request.bob == "human":
            _alice_turn(record, trace_dir)
        else:
            strategy = make_bob(request.bob, seed=request.seed)
            while record.status == "open" and record.state.round < record.cap:
                _alice_turn(record, trace_dir)
                if record.status != "open":
                    break
                position = bob_next(strategy, record.state)
                apply_bob_move(record.state, position)
                record.moves.append(BobMove(position))
                witness = detect_rainbow(record.state, record.k + 1)
                if witness is not None:
                    _finish(record, Outcome("alice_win", record.state.round,
                                            witness=witness), trace_dir)
            if record.status == "open":
                _finish(record, Outcome("cap_exceeded", record.state.round), trace_dir)
        with registry_lock:
            sessions[record.id] = record
        return _state_view(record)

    def _get(session_id: str) -> SessionRecord:
        with registry_lock:
            record = sessions.get(session_id)
        if record is None:
            raise HTTPException(404, f"no session {session_id!r}")
        return record

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _state_view(_get(session_id))

    @app.post("/sessions/{session_id}/bob-move")
    def bob_move(session_id: str, request: BobMoveRequest):
        record = _get(session_id)
        if not record.lock.acquire(blocking=False):
            raise HTTPException(409, "a move is already in flight")
        try:
            if record.status != "open":
                raise HTTPException(409, "session is finished")
            try:
                apply_bob_move(record.state, request.pos)
            except IllegalMoveError as exc:
                raise HTTPException(422, str(exc))
            record.moves.append(BobMove(request.pos))
            record.updated = time.time()
            witness = detect_rainbow(record.state, record.k + 1)
            if witness is not None:
                _finish(record, Outcome("alice_win", record.state.round,
                                        witness=witness), trace_dir)
            elif record.state.round >= record.cap:
                _finish(record, Outcome("cap_exceeded", record.state.round), trace_dir)
            else:
                _alice_turn(record, trace_dir)
            return _state_view(record)
        finally:
            record.lock.release()

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        with registry_lock:
            if session_id not in sessions:
                raise HTTPException(404, f"no session {session_id!r}")
            del sessions[session_id]

    if ui_dir:
        path = Path(ui_dir)
        if path.is_dir():
            app.mount("/", StaticFiles(directory=str(path), html=True), name="ui")
    return app
