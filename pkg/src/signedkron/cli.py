"""Command-line client for the partition-calculus service.

The CLI builds a request, sends it to the service (an in-process instance by
default, or a running server via --server), and renders the JSON response as
text, JSON or CSV.  Exit codes: 0 success, 1 verification failure, 2 usage
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

VERSION = "0.1.0"


class ServiceClient:
    """POSTs to a remote server when given a URL, otherwise serves the
    application in-process through the ASGI test transport.

    Every rendered report starts with a header carrying the tool version
    and the full request, so runs are self-describing and reproducible.
    """

    def __init__(self, server: Optional[str] = None):
        if server:
            import httpx
            self._client = httpx.Client(base_url=server, timeout=None)
        else:
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient
            from .service import app
            self._client = TestClient(app)

    def post(self, path: str, payload: dict) -> dict:
        self.last_request = {"path": path, "body": payload}
        resp = self._client.post(path, json=payload)
        if resp.status_code != 200:
            try:
                detail = resp.json().get("detail", resp.text)
            except Exception:
                detail = resp.text
            raise RuntimeError(f"{path} failed ({resp.status_code}): {detail}")
        return resp.json()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _kv_lines(pairs) -> str:
    return "".join(f"{key}: {value}\n" for key, value in pairs)


def _finish(args, client: ServiceClient, data: dict,
            text_body: str = "", csv_body: Optional[str] = None) -> None:
    """Render with a header carrying the tool version and request echo."""
    request = getattr(client, "last_request", {})
    if args.format == "json":
        out = _render_json({"tool": "signedkron", "version": VERSION,
                            "request": request, "report": data})
    elif args.format == "csv":
        header = (f"# signedkron {VERSION} "
                  f"request={json.dumps(request, sort_keys=True)}\n")
        out = header + (csv_body if csv_body is not None else text_body)
    else:
        header = (f"tool: signedkron {VERSION}\n"
                  f"request: {json.dumps(request, sort_keys=True)}\n")
        out = header + text_body
    _emit(out, args.out)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
    parser.add_argument("--out", help="write the report to this path")
    parser.add_argument("--server",
                        help="base URL of a running service; default runs "
                             "the service in-process")


def _add_space(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="pair count")
    parser.add_argument("--q", type=int, default=0, help="fixed-point count")
    parser.add_argument("--eps", type=int, choices=(1, -1), required=True)


def _space_payload(args) -> dict:
    return {"p": args.p, "q": args.q, "eps": args.eps}


def _partition_payload(args) -> dict:
    sources = [bool(getattr(args, "named", None)),
               bool(getattr(args, "json_partition", None)),
               bool(getattr(args, "file", None))]
    if sum(sources) != 1:
        raise SystemExit2("give exactly one of --named / --json / --file")
    if args.named:
        from .partitions import named_partition, partition_to_dict
        return partition_to_dict(named_partition(args.named))
    if args.json_partition:
        return json.loads(args.json_partition)
    return json.loads(Path(args.file).read_text(encoding="utf-8"))


class SystemExit2(SystemExit):
    def __init__(self, message: str):
        sys.stderr.write(f"error: {message}\n")
        super().__init__(2)


def _add_partition_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--named", help="named partition (identity, cup, cap,"
                                        " onethreeblock, crossing,"
                                        " halfcommutation)")
    parser.add_argument("--json", dest="json_partition",
                        help='inline partition JSON, e.g. '
                             '{"k":0,"l":2,"blocks":[["d1","d2"]]}')
    parser.add_argument("--file", help="path to a partition JSON file")


# ---------------------------------------------------------------------------
# subcommand handlers: build payload, call service, render, return exit code
# ---------------------------------------------------------------------------

def _cmd_space(args, client: ServiceClient) -> int:
    data = client.post("/space", {"space": _space_payload(args),
                                  "include_j": args.include_j})
    pairs = [("n", data["n"]),
             ("bar", ",".join(map(str, data["bar"]))),
             ("eps_of", ",".join(map(str, data["eps_of"])))]
    if data.get("j") is not None:
        pairs.append(("j", json.dumps(data["j"])))
    _finish(args, client, data, _kv_lines(pairs))
    return 0


def _cmd_enumerate(args, client: ServiceClient) -> int:
    data = client.post("/enumerate", {
        "k": args.k, "l": args.l, "cls": args.cls,
        "count_only": args.count_only})
    csv_body = "class,k,l,count\n" + \
               f"{data['cls']},{data['k']},{data['l']},{data['count']}\n"
    text = _kv_lines([("class", data["cls"]), ("k", data["k"]),
                      ("l", data["l"]), ("count", data["count"])])
    for part in data.get("partitions") or []:
        text += json.dumps(part, sort_keys=True) + "\n"
    _finish(args, client, data, text, csv_body)
    return 0


def _cmd_delta(args, client: ServiceClient) -> int:
    payload = {
        "partition": _partition_payload(args),
        "space": _space_payload(args),
        "upper": [int(x) for x in args.upper.split(",") if x],
        "lower": [int(x) for x in args.lower.split(",") if x],
    }
    data = client.post("/delta", payload)
    _finish(args, client, data, f"value: {data['value']}\n")
    return 0


def _cmd_build_t(args, client: ServiceClient) -> int:
    data = client.post("/build-t", {
        "partition": _partition_payload(args),
        "space": _space_payload(args),
        "count_only": args.count_only})
    lines = ["out,in,val"]
    for rec in data.get("entries") or []:
        lines.append("{},{},{}".format(
            " ".join(map(str, rec["out"])) or "-",
            " ".join(map(str, rec["in"])) or "-", rec["val"]))
    csv_body = "\n".join(lines) + "\n"
    text = _kv_lines([("k", data["k"]), ("l", data["l"]),
                      ("n", data["n"]), ("nnz", data["nnz"])])
    for rec in data.get("entries") or []:
        text += json.dumps(rec, sort_keys=True) + "\n"
    _finish(args, client, data, text, csv_body)
    return 0


def _cmd_laws(args, client: ServiceClient) -> int:
    data = client.post("/laws", {
        "space": _space_payload(args), "max_points": args.max_points,
        "include_rows": args.format != "text"})
    ok = data["identity_ok"] and data["tensor_ok"] and data["adjoint_ok"]
    lines = ["sigma,pi,verdict,scalar,exponent"]
    for row in data.get("rows") or []:
        scalar = row.get("scalar")
        exponent = row.get("exponent")
        lines.append(",".join([
            json.dumps(row["sigma"], sort_keys=True).replace(",", ";"),
            json.dumps(row["pi"], sort_keys=True).replace(",", ";"),
            row["verdict"],
            "" if scalar is None else str(scalar),
            "" if exponent is None else str(exponent)]))
    csv_body = "\n".join(lines) + "\n"
    text = _kv_lines([
        ("identity_ok", data["identity_ok"]),
        ("tensor_ok", f"{data['tensor_ok']} ({data['tensor_checked']} checked)"),
        ("adjoint_ok", f"{data['adjoint_ok']} ({data['adjoint_checked']} checked)"),
        ("composition", json.dumps(data["composition_counts"],
                                   sort_keys=True)),
    ])
    _finish(args, client, data, text, csv_body)
    return 0 if ok else 1


def _cmd_closure(args, client: ServiceClient) -> int:
    payload = {"bound": args.bound, "named_generators": args.gen or []}
    if args.gen_file:
        payload["generators"] = json.loads(
            Path(args.gen_file).read_text(encoding="utf-8"))
    if args.compare:
        payload["compare"] = args.compare
    data = client.post("/closure", payload)
    lines = ["k,l,count"]
    for cell in data["cells"]:
        lines.append(f"{cell['k']},{cell['l']},{cell['count']}")
    body = "\n".join(lines) + "\n" + f"total,{data['total']}\n"
    if data.get("verdict") is not None:
        body += (f"verdict,{data['verdict']},missing={data['missing']},"
                 f"extra={data['extra']}\n")
    _finish(args, client, data, body, body)
    if args.compare and data.get("verdict") != "equal":
        return 1
    return 0


def _cmd_sample(args, client: ServiceClient) -> int:
    data = client.post("/sample", {
        "family": args.family, "space": _space_payload(args),
        "seed": args.seed, "count": args.count,
        "include_matrices": not args.no_matrices})
    text = _kv_lines([
        ("family", data["family"]),
        ("seed", data["seed"]), ("count", data["count"]),
        ("max_residual", repr(data["max_residual"]))])
    for el in data.get("elements") or []:
        text += _kv_lines([
            ("membership_residual", repr(el["max_membership_residual"])),
            ("conjugate_entry_residual",
             repr(el["conjugate_entry_residual"]))])
        if args.count <= 3:
            text += json.dumps({"re": el["matrix_re"],
                                "im": el["matrix_im"]},
                               sort_keys=True) + "\n"
    _finish(args, client, data, text)
    return 0 if data["max_residual"] <= 1e-10 else 1


def _cmd_liedim(args, client: ServiceClient) -> int:
    data = client.post("/liedim", {"family": args.family,
                                   "space": _space_payload(args)})
    _finish(args, client, data, f"dimension: {data['dimension']}\n")
    return 0


def _cmd_enum_sbar(args, client: ServiceClient) -> int:
    data = client.post("/enum-sbar", {"space": _space_payload(args),
                                      "include_matrices": args.matrices})
    _finish(args, client, data,
            _kv_lines([("count", data["count"]),
                       ("expected", data["expected"])]))
    return 0 if data["count"] == data["expected"] else 1


def _cmd_gamma(args, client: ServiceClient) -> int:
    data = client.post("/gamma", {"space": _space_payload(args)})
    _finish(args, client, data, _kv_lines([
        ("residual_gamma_unitary", repr(data["residual_gamma_unitary"])),
        ("residual_gamma_k_gamma_t", repr(data["residual_gamma_k_gamma_t"])),
        ("residual_c_j_c_t", repr(data["residual_c_j_c_t"]))]))
    return 0


def _cmd_homreport(args, client: ServiceClient) -> int:
    data = client.post("/homreport", {
        "family": args.family, "cls": args.cls, "k": args.k, "l": args.l,
        "space": _space_payload(args), "samples": args.samples,
        "seed": args.seed, "tol": args.tol})
    csv_body = ("family,class,k,l,p,q,eps,span_rank,commutant_dim,"
                "residual,verdict\n")
    csv_body += ",".join(map(str, [
        data["family"], data["cls"], data["k"], data["l"],
        data["space"]["p"], data["space"]["q"], data["space"]["eps"],
        data["span_rank"], data["commutant_dim"],
        repr(data["containment_max_residual"]), data["verdict"]])) + "\n"
    text = _kv_lines([
        ("family", data["family"]), ("class", data["cls"]),
        ("k", data["k"]), ("l", data["l"]),
        ("span_rank", data["span_rank"]),
        ("commutant_dim", data["commutant_dim"]),
        ("containment_max_residual",
         repr(data["containment_max_residual"])),
        ("verdict", data["verdict"])])
    _finish(args, client, data, text, csv_body)
    return 0 if data["verdict"] != "mismatch" else 1


def _cmd_suite(args, client: ServiceClient) -> int:
    data = client.post("/suite", {
        "seed": args.seed, "quick": args.quick,
        "membership_tol": args.tol, "rank_tol": args.rank_tol,
        "max_n": args.max_n, "max_points": args.max_points})
    lines = ["check,passed"]
    for check in data["checks"]:
        lines.append(f"{check['name']},{check['passed']}")
    lines.append(f"ALL,{data['passed']}")
    csv_body = "\n".join(lines) + "\n"
    text = ""
    for check in data["checks"]:
        status = "pass" if check["passed"] else "FAIL"
        text += f"[{status}] {check['name']}: {check['summary']}\n"
    text += f"result: {'pass' if data['passed'] else 'FAIL'}\n"
    _finish(args, client, data, text, csv_body)
    return 0 if data["passed"] else 1


def _cmd_serve(args, _client=None) -> int:
    import uvicorn

    uvicorn.run("signedkron.service:app", host=args.host, port=args.port,
                log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signedkron",
        description="Exact signed partition calculus over super-spaces")
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("space", help="describe a super-space (optionally "
                                      "with its J matrix)")
    _add_space(sp)
    sp.add_argument("--include-j", action="store_true",
                    help="emit the dense integer J matrix")
    _add_common(sp)
    sp.set_defaults(func=_cmd_space)

    sp = sub.add_parser("enumerate", help="list a partition class on (k,l)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--class", dest="cls", default="peven")
    sp.add_argument("--count-only", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=_cmd_enumerate)

    sp = sub.add_parser("delta", help="evaluate the signed Kronecker symbol")
    _add_partition_source(sp)
    _add_space(sp)
    sp.add_argument("--upper", default="", help="comma-separated indices")
    sp.add_argument("--lower", default="", help="comma-separated indices")
    _add_common(sp)
    sp.set_defaults(func=_cmd_delta)

    sp = sub.add_parser("build-t", help="materialize the sparse signed map")
    _add_partition_source(sp)
    _add_space(sp)
    sp.add_argument("--count-only", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=_cmd_build_t)

    sp = sub.add_parser("laws", help="verify the categorical laws on a space")
    _add_space(sp)
    sp.add_argument("--max-points", type=int, default=6)
    _add_common(sp)
    sp.set_defaults(func=_cmd_laws)

    sp = sub.add_parser("closure", help="close a generator set and compare")
    sp.add_argument("--gen", action="append",
                    help="named generator (repeatable)")
    sp.add_argument("--gen-file", help="JSON list of partition objects")
    sp.add_argument("--bound", type=int, default=6)
    sp.add_argument("--compare", help="partition class to compare against")
    _add_common(sp)
    sp.set_defaults(func=_cmd_closure)

    sp = sub.add_parser("sample", help="sample group elements")
    sp.add_argument("--family", required=True,
                    choices=("obar", "sbar", "hbar", "bbar"))
    _add_space(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--no-matrices", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=_cmd_sample)

    sp = sub.add_parser("liedim", help="exact Lie-algebra dimension")
    sp.add_argument("--family", required=True, choices=("obar", "bbar"))
    _add_space(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_liedim)

    sp = sub.add_parser("enum-sbar", help="exhaustive permutation enumeration")
    _add_space(sp)
    sp.add_argument("--matrices", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=_cmd_enum_sbar)

    sp = sub.add_parser("gamma", help="the conjugator onto real matrices")
    _add_space(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_gamma)

    sp = sub.add_parser("homreport", help="span rank vs commutant dimension")
    sp.add_argument("--family", required=True, choices=("obar", "hbar"))
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    _add_space(sp)
    sp.add_argument("--samples", type=int, default=16)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-8)
    _add_common(sp)
    sp.set_defaults(func=_cmd_homreport)

    sp = sub.add_parser("suite", help="run the verification battery")
    sp.add_argument("--quick", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-10,
                    help="membership tolerance")
    sp.add_argument("--rank-tol", type=float, default=1e-8)
    sp.add_argument("--max-n", type=int, default=None,
                    help="cap matrix dimensions across all checks")
    sp.add_argument("--max-points", type=int, default=None,
                    help="cap total diagram legs across all checks")
    _add_common(sp)
    sp.set_defaults(func=_cmd_suite)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    sp.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    client = ServiceClient(getattr(args, "server", None))
    try:
        return args.func(args, client)
    except RuntimeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
