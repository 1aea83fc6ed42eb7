"""Command-line client for the distribution service.

The CLI builds the same request models the HTTP endpoints accept and either
dispatches them in process (default) or posts them to a running service
(--server URL). Reports go to stdout or --out as JSON; a one-line human
summary goes to stderr.

Exit codes: 0 all checks passed, 1 one or more checks failed,
2 invalid configuration, 3 file or network I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Type, TypeVar

from pydantic import BaseModel, ValidationError

from . import runner
from .schemas import (
    GenRequest,
    PlanDocument,
    RunReport,
    RunRequest,
    StateDocument,
    VerifyReport,
    VerifyRequest,
)
from .states import NORM_TOL

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3

M = TypeVar("M", bound=BaseModel)


class ConfigError(Exception):
    pass


class TransportError(Exception):
    pass


def _read_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise TransportError(f"cannot read {path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path} is not valid JSON: {e}") from None


def _write_output(payload: str, out: str | None) -> None:
    if out is None:
        print(payload)
        return
    try:
        Path(out).write_text(payload + "\n")
    except OSError as e:
        raise TransportError(f"cannot write {out}: {e}") from None


def _dispatch(server: str | None, path: str, req: BaseModel, response_model: Type[M]) -> M:
    if server is None:
        local = {
            "/run": runner.execute_run,
            "/verify": runner.execute_verify,
            "/gen": runner.execute_gen,
        }[path]
        return local(req)  # type: ignore[arg-type]
    import httpx

    try:
        resp = httpx.post(server.rstrip("/") + path, json=req.model_dump(mode="json"), timeout=300.0)
    except httpx.HTTPError as e:
        raise TransportError(f"request to {server} failed: {e}") from None
    if resp.status_code != 200:
        raise ConfigError(f"server rejected the request ({resp.status_code}): {resp.text}")
    return response_model.model_validate(resp.json())


def _run_request(args: argparse.Namespace, model: Type[M]) -> M:
    state = plan = None
    if args.state is not None:
        state = StateDocument.model_validate(_read_json(args.state))
    if args.plan is not None:
        plan = PlanDocument.model_validate(_read_json(args.plan))
    return model(
        seed=args.seed,
        n=args.n,
        preset=args.preset,
        state=state,
        plan=plan,
        parties=args.parties,
        trials=args.trials,
    )


def _cmd_run(args: argparse.Namespace) -> int:
    req = _run_request(args, RunRequest)
    report = _dispatch(args.server, "/run", req, RunReport)
    _write_output(report.model_dump_json(indent=2), args.out)
    good = sum(1 for t in report.trials if t.passed)
    print(
        f"run: {good}/{len(report.trials)} trials recovered the state "
        f"(fidelity >= 1 - {NORM_TOL:g})",
        file=sys.stderr,
    )
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


def _cmd_verify(args: argparse.Namespace) -> int:
    req = _run_request(args, VerifyRequest)
    report = _dispatch(args.server, "/verify", req, VerifyReport)
    _write_output(report.model_dump_json(indent=2), args.out)
    good = sum(1 for w in report.outcome_words if w.passed)
    print(
        f"verify[{report.mode}]: {good}/{len(report.outcome_words)} outcome words, "
        f"{sum(1 for t in report.correction_tables if t.passed)}/{len(report.correction_tables)} "
        f"correction tables passed",
        file=sys.stderr,
    )
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


def _cmd_gen(args: argparse.Namespace) -> int:
    req = GenRequest(kind=args.preset, n=args.n, seed=args.seed)
    doc = _dispatch(args.server, "/gen", req, StateDocument)
    _write_output(doc.model_dump_json(indent=2), args.out)
    print(f"gen: wrote {len(doc.labels)}-qubit {args.preset} state", file=sys.stderr)
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _add_common(sub: argparse.ArgumentParser, trials_default: int) -> None:
    sub.add_argument("--seed", type=int, default=0, help="64-bit unsigned master seed")
    sub.add_argument("--n", type=int, default=None, help="number of register qubits")
    sub.add_argument("--preset", default=None,
                     help="input state: ghz | w | bell | product | random-haar")
    sub.add_argument("--state", default=None, help="path to a state JSON file")
    sub.add_argument("--plan", default=None, help="path to a plan JSON file")
    sub.add_argument("--parties", type=int, default=1,
                     help="receivers for the generated round-robin plan")
    sub.add_argument("--trials", type=int, default=trials_default)
    sub.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    sub.add_argument("--server", default=None, help="POST to this service URL instead of running locally")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swapdist",
        description="Distribute multiqubit states to remote parties over singlet pairs.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="execute seeded distribution runs")
    _add_common(run, trials_default=1)
    run.set_defaults(func=_cmd_run)

    verify = subs.add_parser("verify", help="check every collapse branch against the oracle")
    _add_common(verify, trials_default=100)
    verify.set_defaults(func=_cmd_verify)

    gen = subs.add_parser("gen", help="write a state JSON file")
    gen.add_argument("--preset", required=True,
                     help="ghz | w | bell | product | random-haar")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.add_argument("--server", default=None)
    gen.set_defaults(func=_cmd_gen)

    serve = subs.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, ValueError, ConfigError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except TransportError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
