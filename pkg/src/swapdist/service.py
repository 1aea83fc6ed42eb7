"""HTTP front end: stateless simulation endpoints over the core package."""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__, runner
from .schemas import (
    GenRequest,
    HealthResponse,
    RunReport,
    RunRequest,
    StateDocument,
    VerifyReport,
    VerifyRequest,
)

app = FastAPI(
    title="swapdist",
    version=__version__,
    description=(
        "Distribute a multiqubit state to remote parties using shared singlet "
        "pairs, two-qubit Bell measurements and two-bit classical corrections. "
        "Every request is self-contained and seeded, so responses are "
        "reproducible."
    ),
)


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/run", response_model=RunReport)
def run(req: RunRequest) -> RunReport:
    try:
        return runner.execute_run(req)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e)) from None


@app.post("/verify", response_model=VerifyReport)
def verify(req: VerifyRequest) -> VerifyReport:
    try:
        return runner.execute_verify(req)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e)) from None


@app.post("/gen", response_model=StateDocument)
def gen(req: GenRequest) -> StateDocument:
    try:
        return runner.execute_gen(req)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e)) from None


def main() -> None:
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)


if __name__ == "__main__":
    main()
