"""FastAPI application: REST wrappers around the core plus the session socket."""

from __future__ import annotations

import asyncio
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse, JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import TypeAdapter, ValidationError

from tagsim import beacon, metrics, ndef, scenarios
from tagsim.service import schemas
from tagsim.service.sessions import Session, SessionError, SessionManager

_CLIENT_ADAPTER = TypeAdapter(schemas.ClientMessage)

_PLACEHOLDER = """<!doctype html>
<html><head><title>tagsim</title></head>
<body><h1>tagsim session service</h1>
<p>The browser client is not built. Run <code>npm install && npm run build</code>
in <code>frontend/</code>, or connect directly to the websocket at
<code>/session</code>.</p></body></html>
"""


def _frontend_dist() -> Path | None:
    root = Path(__file__).resolve().parents[3]
    dist = root / "frontend" / "dist"
    if dist.is_dir() and (dist / "index.html").is_file():
        return dist
    return None


def create_app() -> FastAPI:
    app = FastAPI(title="tagsim", version="0.1.0")
    manager = SessionManager()
    app.state.sessions = manager

    @app.exception_handler(ValueError)
    async def bad_value(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": {"code": type(exc).__name__, "detail": str(exc)}},
        )

    # -- stateless REST surface ---------------------------------------------

    @app.get("/healthz")
    def healthz() -> dict:
        return {"ok": True}

    @app.get("/api/battery", response_model=schemas.BatteryTable)
    def battery() -> schemas.BatteryTable:
        rows = [schemas.BatteryRow(**row) for row in metrics.model_summary()]
        return schemas.BatteryTable(rows=rows)

    @app.get("/api/cost", response_model=schemas.CostTable)
    def cost() -> schemas.CostTable:
        rows = []
        for model, items in metrics.MODEL_BOMS.items():
            rows.append(
                schemas.CostRow(
                    model=model,
                    items=[
                        schemas.BomItemModel(
                            name=i.name,
                            unit_price_usd=i.unit_price_usd,
                            quantity=i.quantity,
                        )
                        for i in items
                    ],
                    total_usd=float(metrics.bom_cost(items)),
                )
            )
        return schemas.CostTable(rows=rows)

    @app.post("/api/sus", response_model=schemas.SusResponse)
    def sus(req: schemas.SusRequest) -> schemas.SusResponse:
        return schemas.SusResponse(score=score_answers(req.answers))

    @app.post("/api/beacon/encode", response_model=schemas.BeaconHex)
    def beacon_encode(req: schemas.BeaconEncodeRequest) -> schemas.BeaconHex:
        frame = beacon.encode_beacon(
            req.version,
            beacon.MODEL_CODES.get(req.model, -1),
            beacon.parse_tag_id(req.tag_id),
            beacon.FLAG_ACTIVATE if req.activate else 0,
        )
        return schemas.BeaconHex(frame=frame.hex())

    @app.post("/api/beacon/decode", response_model=schemas.BeaconFields)
    def beacon_decode(req: schemas.BeaconHex) -> schemas.BeaconFields:
        decoded = beacon.decode_beacon(bytes.fromhex(req.frame))
        return schemas.BeaconFields(
            version=decoded.version,
            model=decoded.model_name,
            tag_id=decoded.tag_id.hex(),
            flags=decoded.flags,
            activation=decoded.activation,
        )

    @app.post("/api/ndef/encode", response_model=schemas.NdefHex)
    def ndef_encode(req: schemas.NdefEncodeRequest) -> schemas.NdefHex:
        info = ndef.DeviceInfo.from_dict(req.device_info)
        return schemas.NdefHex(message=ndef.encode_device_info(info).hex())

    @app.post("/api/ndef/decode", response_model=schemas.NdefDecodeResponse)
    def ndef_decode(req: schemas.NdefHex) -> schemas.NdefDecodeResponse:
        info = ndef.decode_device_info(bytes.fromhex(req.message))
        return schemas.NdefDecodeResponse(device_info=info.to_dict())

    @app.get("/api/scenarios", response_model=schemas.ScenarioList)
    def scenario_names() -> schemas.ScenarioList:
        return schemas.ScenarioList(names=scenarios.bundled_names())

    @app.get("/api/session/{session_id}/trace")
    def session_trace(session_id: str) -> dict:
        session = manager.sessions.get(session_id)
        if session is None or session.world is None or session.document is None:
            raise HTTPException(status_code=404, detail="no such session")
        return {
            "version": 1,
            "scenario": session.document,
            "commands": session.world.trace,
        }

    @app.get("/api/session/{session_id}/events", response_class=PlainTextResponse)
    def session_events(session_id: str) -> str:
        session = manager.sessions.get(session_id)
        if session is None or session.world is None:
            raise HTTPException(status_code=404, detail="no such session")
        return session.world.event_log_text()

    # -- interactive session socket -------------------------------------------

    @app.websocket("/session")
    async def session_socket(ws: WebSocket) -> None:
        await ws.accept()
        session: Session | None = None
        ticker: asyncio.Task | None = None

        async def send(message) -> None:
            await ws.send_text(message.model_dump_json(exclude_none=True))

        async def run_ticker() -> None:
            while True:
                assert session is not None
                await asyncio.sleep(1.0 / session.auto_tick_hz)
                async with session.lock:
                    if not session.auto_tick:
                        continue
                    session.tick_once()
                    pushes = session.drain_pushes()
                for push in pushes:
                    await send(push)

        try:
            while True:
                raw = await ws.receive_text()
                try:
                    msg = _CLIENT_ADAPTER.validate_json(raw)
                except ValidationError as exc:
                    await send(
                        schemas.ErrorMessage(
                            code="bad_message", detail=str(exc.errors()[0].get("msg"))
                        )
                    )
                    continue
                if session is None:
                    if msg.type != "hello":
                        await send(
                            schemas.ErrorMessage(
                                code="bad_session", detail="say hello first"
                            )
                        )
                        continue
                    session = manager.get_or_create(msg.session_id)
                    ticker = asyncio.create_task(run_ticker())
                async with session.lock:
                    try:
                        response = session.handle(msg)
                        pushes = session.drain_pushes()
                    except SessionError as exc:
                        response = schemas.ErrorMessage(
                            code=exc.code, detail=exc.detail
                        )
                        pushes = session.drain_pushes()
                await send(response)
                for push in pushes:
                    await send(push)
        except WebSocketDisconnect:
            pass
        finally:
            if ticker is not None:
                ticker.cancel()

    # -- static client ----------------------------------------------------------

    dist = _frontend_dist()
    if dist is not None:
        app.mount("/", StaticFiles(directory=dist, html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        def placeholder() -> str:
            return _PLACEHOLDER

    return app


def score_answers(answers) -> float:
    """Score one respondent or average the scores of many."""
    if answers and isinstance(answers[0], list):
        scores = [metrics.sus_score(a) for a in answers]
        return sum(scores) / len(scores)
    return metrics.sus_score(answers)
