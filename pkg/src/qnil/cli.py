"""Command-line client for the algebra service.

By default requests are served in-process; pass --server to talk to a
running instance instead.  Exit codes: 0 success, 1 a verification
reported failure, 2 usage error, 3 internal error or unreachable server.
"""

import argparse
import asyncio
import json
import sys

import httpx

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

_TIMEOUT = 600.0


# -- argument parsing ---------------------------------------------------------

def _parse_word(value):
    """'1,2,1' -> [1, 2, 1]; '' -> []; lists pass through."""
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    value = value.strip()
    if not value:
        return []
    try:
        return [int(p) for p in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected comma-separated integers, got %r" % value)


def _parse_cartan(value):
    if isinstance(value, dict):
        return value
    value = value.strip()
    if value.startswith("{"):
        try:
            return json.loads(value)
        except ValueError:
            raise argparse.ArgumentTypeError("bad Cartan JSON: %r" % value)
    return {"type": value}


def _parse_json_value(value):
    if not isinstance(value, str):
        return value
    try:
        return json.loads(value)
    except ValueError:
        raise argparse.ArgumentTypeError("bad JSON: %r" % value)


_DESTS = {}


def _leaf(subparsers, name, key=None, **kwargs):
    p = subparsers.add_parser(name, **kwargs)
    p.add_argument("--format", choices=("text", "json"), default=None,
                   help="output rendering (default text)")
    p.add_argument("--output", default=None, metavar="FILE",
                   help="write the rendering to FILE instead of stdout")
    p.add_argument("--server", default=None, metavar="URL",
                   help="base URL of a running service (default in-process)")
    p.add_argument("--config", default=None, metavar="FILE",
                   help="JSON file with default values for the flags")
    _DESTS[key or name] = p
    return p


def _add_cartan_word(p, word_help="reduced word, e.g. 1,2,1"):
    p.add_argument("--cartan", type=_parse_cartan, default=None,
                   help="Cartan type name (A2, B2, ...) or JSON gcm/sym")
    p.add_argument("--word", type=_parse_word, default=None, help=word_help)


def build_parser():
    root = argparse.ArgumentParser(
        prog="qnil",
        description="Exact quantum nilpotent algebras: bases, the twist "
                    "map, minors, and identity verification.")
    sub = root.add_subparsers(dest="command", required=True)

    p = _leaf(sub, "basis", help="compute basis elements of a chart")
    p.add_argument("kind", choices=("pbw", "dcb", "glow"),
                   help="dual PBW, dual canonical, or canonical basis")
    _add_cartan_word(p)
    p.add_argument("--height", type=int, default=None,
                   help="all weight slices up to this height (default 2)")
    p.add_argument("--weight", type=_parse_word, default=None,
                   help="a single weight slice, e.g. 1,1")

    p = _leaf(sub, "twist", help="apply the twist map to an element")
    _add_cartan_word(p)
    p.add_argument("--element", type=_parse_json_value, default=None,
                   help="element as JSON word/coefficient pairs")
    p.add_argument("--fup", type=_parse_word, default=None,
                   help="dual PBW label in the chart of --word")
    p.add_argument("--direction", choices=("inverse", "forward"),
                   default=None, help="twist along w^-1 (default) or w")

    p = _leaf(sub, "minor", help="compute a quantum minor")
    p.add_argument("--cartan", type=_parse_cartan, default=None,
                   help="Cartan type name or JSON gcm/sym")
    p.add_argument("--lambda", dest="lam", type=_parse_word, default=None,
                   help="dominant weight in fundamental coordinates")
    p.add_argument("--u", type=_parse_word, default=None,
                   help="first Weyl label (reduced word)")
    p.add_argument("--w", type=_parse_word, default=None,
                   help="second Weyl label (reduced word)")
    p.add_argument("--sign", choices=("highest", "lowest"), default=None)
    p.add_argument("--chart", type=_parse_word, default=None,
                   help="also expand in the dual PBW chart of this word")

    v = sub.add_parser("verify", help="machine-check an identity")
    vsub = v.add_subparsers(dest="check", required=True)

    p = _leaf(vsub, "rootvectors", key="verify:rootvectors",
              help="twist images of the chart root vectors")
    _add_cartan_word(p)

    p = _leaf(vsub, "pbwrev", key="verify:pbwrev",
              help="dual PBW basis reverses under the twist")
    _add_cartan_word(p)
    p.add_argument("--height", type=int, default=None,
                   help="check all labels up to this height (default 2)")

    for check, extra in (("dcbtwist", "dual canonical basis permutes"),
                         ("revlex", "coefficient table reverses")):
        p = _leaf(vsub, check, key="verify:" + check, help=extra)
        _add_cartan_word(p)
        p.add_argument("--weight", type=_parse_word, default=None,
                       help="weight slice, e.g. 1,1")

    p = _leaf(vsub, "cofinite", key="verify:cofinite",
              help="twist scalar on the cofinite part")
    _add_cartan_word(p)
    p.add_argument("--element", type=_parse_json_value, default=None,
                   help="element as JSON word/coefficient pairs")
    p.add_argument("--ambient", type=_parse_word, default=None,
                   help="longest-element word for the ambient slice")

    p = _leaf(vsub, "minortwist", key="verify:minortwist",
              help="minor labels transport under the twist")
    p.add_argument("--cartan", type=_parse_cartan, default=None)
    p.add_argument("--lambda", dest="lam", type=_parse_word, default=None)
    p.add_argument("--u1", type=_parse_word, default=None)
    p.add_argument("--u2", type=_parse_word, default=None)
    p.add_argument("--word", type=_parse_word, default=None)

    p = _leaf(vsub, "tsystem", key="verify:tsystem",
              help="exchange identity among chart minors")
    _add_cartan_word(p)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--order", type=_parse_word, default=None,
                   help="total order on the index set, e.g. 2,1")

    p = _leaf(vsub, "tsystemtwist", key="verify:tsystemtwist",
              help="exchange identity transports to the reversed chart")
    _add_cartan_word(p)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--d", type=int, default=None)

    p = _leaf(vsub, "finitetype", key="verify:finitetype",
              help="diagram automorphism composed with star")
    _add_cartan_word(p, word_help="longest-element word (optional)")
    p.add_argument("--weight", type=_parse_word, default=None)
    p.add_argument("--cap", dest="monomial_cap", type=int, default=None,
                   help="check at most this many monomials")

    _leaf(vsub, "all", key="verify:all",
          help="run the default verification suite")

    p = _leaf(sub, "serve", help="run the HTTP service")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)

    return root


# -- config file --------------------------------------------------------------

def _apply_config(args):
    if not getattr(args, "config", None):
        return
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise SystemExit(_usage_exit("cannot read config: %s" % exc))
    if not isinstance(cfg, dict):
        raise SystemExit(_usage_exit("config must be a JSON object"))
    key = args.command if args.command != "verify" \
        else "verify:" + args.check
    parser = _DESTS[key]
    known = {a.dest for a in parser._actions if a.dest != "help"}
    coerce = {a.dest: a.type for a in parser._actions if a.type}
    for name, value in cfg.items():
        dest = name.replace("-", "_")
        if dest == "lambda":
            dest = "lam"
        if dest not in known:
            raise SystemExit(_usage_exit(
                "unknown config key %r for %r" % (name, key)))
        if getattr(args, dest, None) is None:
            fn = coerce.get(dest)
            try:
                setattr(args, dest, fn(value) if fn else value)
            except argparse.ArgumentTypeError as exc:
                raise SystemExit(_usage_exit(
                    "config key %r: %s" % (name, exc)))


def _usage_exit(message):
    print("usage error: %s" % message, file=sys.stderr)
    return EXIT_USAGE


# -- request bodies -----------------------------------------------------------

def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            flag = "--lambda" if name == "lam" else "--" + name
            raise SystemExit(_usage_exit("missing %s" % flag))


def _body_common(args, *fields):
    body = {}
    for field in fields:
        value = getattr(args, field, None)
        if value is not None:
            key = "lambda" if field == "lam" else field
            body[key] = value
    return body


def build_request(args):
    """(path, body) for the parsed invocation."""
    cmd = args.command
    if cmd == "basis":
        _require(args, "cartan", "word")
        if args.height is None and args.weight is None:
            args.height = 2
        return "/basis/%s" % args.kind, _body_common(
            args, "cartan", "word", "height", "weight")
    if cmd == "twist":
        _require(args, "cartan", "word")
        if args.element is None and args.fup is None:
            raise SystemExit(_usage_exit("give --element or --fup"))
        return "/twist", _body_common(
            args, "cartan", "word", "element", "fup", "direction")
    if cmd == "minor":
        _require(args, "cartan", "lam", "w")
        return "/minor", _body_common(
            args, "cartan", "lam", "u", "w", "sign", "chart")
    # verify family
    check = args.check
    if check == "all":
        return "/verify/all", {}
    if check in ("rootvectors",):
        _require(args, "cartan", "word")
        return "/verify/rootvectors", _body_common(args, "cartan", "word")
    if check == "pbwrev":
        _require(args, "cartan", "word")
        return "/verify/pbwrev", _body_common(
            args, "cartan", "word", "height")
    if check in ("dcbtwist", "revlex"):
        _require(args, "cartan", "word", "weight")
        return "/verify/%s" % check, _body_common(
            args, "cartan", "word", "weight")
    if check == "cofinite":
        _require(args, "cartan", "word", "element")
        return "/verify/cofinite", _body_common(
            args, "cartan", "word", "element", "ambient")
    if check == "minortwist":
        _require(args, "cartan", "lam", "u1", "u2", "word")
        return "/verify/minortwist", _body_common(
            args, "cartan", "lam", "u1", "u2", "word")
    if check == "tsystem":
        _require(args, "cartan", "word", "b", "d")
        return "/verify/tsystem", _body_common(
            args, "cartan", "word", "b", "d", "order")
    if check == "tsystemtwist":
        _require(args, "cartan", "word", "b", "d")
        return "/verify/tsystemtwist", _body_common(
            args, "cartan", "word", "b", "d")
    if check == "finitetype":
        _require(args, "cartan", "weight")
        return "/verify/finitetype", _body_common(
            args, "cartan", "weight", "word", "monomial_cap")
    raise SystemExit(_usage_exit("unknown check %r" % check))


# -- transport ----------------------------------------------------------------

def _post(args, path, body):
    if args.server:
        try:
            with httpx.Client(base_url=args.server,
                              timeout=_TIMEOUT) as client:
                resp = client.post(path, json=body)
        except httpx.HTTPError as exc:
            print("cannot reach %s: %s" % (args.server, exc),
                  file=sys.stderr)
            raise SystemExit(EXIT_INTERNAL)
        return resp.status_code, resp.json()

    from .api import create_app

    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://qnil.internal",
                                     timeout=_TIMEOUT) as client:
            return await client.post(path, json=body)

    resp = asyncio.run(go())
    return resp.status_code, resp.json()


# -- rendering ----------------------------------------------------------------

def _scalar_fields(report):
    bits = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, bool):
            bits.append("%s=%s" % (key, "true" if value else "false"))
        elif isinstance(value, (int, str)):
            bits.append("%s=%s" % (key, value))
        elif key in ("word", "weight", "target_weight", "beta", "label",
                     "order", "u", "w", "u1", "u2", "lambda",
                     "twisted_weight"):
            bits.append("%s=%s" % (key, json.dumps(value)))
    return " ".join(bits)


def render_text(args, payload):
    report = payload["report"]
    status = "PASS" if payload["ok"] else "FAIL"
    if args.command == "verify":
        lines = ["%s verify %s  %s" % (status, args.check,
                                       _scalar_fields(report))]
        for row in report.get("checks", ()):
            lines.append("  %s %s  %s" % (
                "PASS" if row["ok"] else "FAIL", row["name"],
                _scalar_fields(row["report"])))
        return "\n".join(line.rstrip() for line in lines) + "\n"
    if args.command == "basis":
        lines = ["%s basis %s word=%s slices=%d"
                 % (status.lower() if payload["ok"] else status,
                    report["basis"], json.dumps(report["word"]),
                    len(report["slices"]))]
        for slc in report["slices"]:
            lines.append("  weight=%s labels=%d"
                         % (json.dumps(slc["weight"]), len(slc["labels"])))
        return "\n".join(lines) + "\n"
    return "%s %s  %s\n" % (status.lower() if payload["ok"] else status,
                            args.command, _scalar_fields(report))


def render(args, payload):
    if (args.format or "text") == "json":
        return json.dumps(payload, sort_keys=True,
                          separators=(",", ":")) + "\n"
    return render_text(args, payload)


# -- entry point --------------------------------------------------------------

def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
    except SystemExit as exc:
        return exc.code

    if args.command == "serve":
        import uvicorn

        from .api import create_app
        uvicorn.run(create_app(), host=args.host or "127.0.0.1",
                    port=args.port or 8000)
        return EXIT_OK

    try:
        path, body = build_request(args)
    except SystemExit as exc:
        return exc.code
    try:
        status, payload = _post(args, path, body)
    except SystemExit as exc:
        return exc.code

    if status == 422:
        message = payload.get("error", payload).get("message", payload)
        print("usage error: %s" % message, file=sys.stderr)
        return EXIT_USAGE
    if status != 200:
        message = payload.get("error", {}).get("message", "")
        print("internal error (%d): %s" % (status, message),
              file=sys.stderr)
        return EXIT_INTERNAL

    out = render(args, payload)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK if payload["ok"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
