"""
命令列模組 - duvalcert 的單一入口

子命令：ec、certify、system、cubic、pencil、paper-suite。
退出碼：0 成功，1 證書或套件失敗，2 輸入錯誤。
"""

import argparse
import logging
import sys
import time
from typing import Any, Dict, List, Optional, Tuple

from . import __version__
from .config import load_config, setup_logging
from .elliptic import (
    ECPoint,
    EllipticCurve,
    count_points_fp,
    ec_add,
    ec_neg,
    ec_scalar_mul,
    independence_certificate,
    integral_halving_witnesses,
    torsion_is_trivial,
    two_torsion_is_trivial,
)
from .errors import BadReductionError, DuvalError, MalformedInputError, OffCurveError
from .exact import parse_rational
from .generality import certify_all_k, certify_k
from .moduli import (
    bn_divisor_data,
    brill_noether_divisor_triples,
    duval_locus_dimension,
    pencil_invariants,
)
from .plane_poly import weierstrass_cubic
from .plane_systems import (
    anticanonical_cubic,
    base_point,
    check_primes,
    cubic_problem,
    duval_problem,
    exact_multiplicities,
    generic_member,
    solve_system,
)
from .point_config import named_point, resolve_points
from .report import RunReport, digest
from .singular_locus import singular_locus
from .suite_coordinator import run_paper_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_MALFORMED = 2

# 只影響執行方式、不影響結果的參數，不進入命令回顯與摘要
EXECUTION_FLAGS = ("json", "threads", "timing", "config")

Outcome = Tuple[Dict[str, Any], bool, List[str]]


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="輸出 JSON")
    common.add_argument("--seed", type=int, default=None, help="一般成員與模質數的隨機種子")
    common.add_argument("--threads", type=int, default=None, help="Cremona 檢查的線程數")
    common.add_argument("--config", default=None, help="JSON 配置文件")
    common.add_argument("--timing", action="store_true", help="在 JSON 中包含耗時")
    return common


def build_parser() -> argparse.ArgumentParser:
    """構建命令列解析器"""
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="duvalcert", description="九點配置一般性證書與 Du Val 曲線構造")
    parser.add_argument("--version", action="version", version=f"duvalcert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    ec = sub.add_parser("ec", parents=[common], help="橢圓曲線運算",
                        description="點寫作 'x,y'、'inf' 或 p1..p9；負座標請寫 --P=-2,3")
    ec.add_argument("op", choices=["add", "neg", "mul", "count", "torsion", "two-torsion", "halve", "independent"])
    ec.add_argument("--curve", default="0,17", help="a,b（預設 0,17）")
    ec.add_argument("--P", dest="p", default=None, help="第一個點")
    ec.add_argument("--Q", dest="q", default=None, help="第二個點")
    ec.add_argument("--n", type=int, default=2, help="倍數")
    ec.add_argument("--prime", type=int, default=None, help="點計數的質數")
    ec.add_argument("--primes", default=None, help="逗號分隔的質數（預設取配置）")
    ec.add_argument("--x", dest="target_x", type=int, default=None, help="二分檢查的目標 x")
    ec.add_argument("--points", default="paper", help="解析 p1..p9 用的配置")

    certify = sub.add_parser("certify", parents=[common], help="k-一般性證書")
    certify.add_argument("--points", required=True, help="配置文件路徑或 paper")
    mode = certify.add_mutually_exclusive_group(required=True)
    mode.add_argument("--k", type=int, help="有限 k")
    mode.add_argument("--all", action="store_true", help="對所有 k")

    system = sub.add_parser("system", parents=[common], help="Du Val 系統 L_g")
    system.add_argument("--genus", type=int, required=True)
    system.add_argument("--points", required=True)
    system.add_argument("--verify-base-point", action="store_true")
    system.add_argument("--scan-singularities", action="store_true")

    cubic = sub.add_parser("cubic", parents=[common], help="反典範三次曲線 J'")
    cubic.add_argument("--points", required=True)

    pencil = sub.add_parser("pencil", parents=[common], help="束不變量")
    pencil.add_argument("--genus", type=int, required=True)
    pencil.add_argument("--bn", default=None, help="r,d")

    suite = sub.add_parser("paper-suite", parents=[common], help="完整驗證套件")
    suite.add_argument("--points", default="paper")
    suite.add_argument("--k", type=int, default=None, help="覆寫套件的 k")

    return parser


def _parse_pair(text: str, what: str) -> Tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2:
        raise MalformedInputError(f"{what} must be two comma-separated values, got {text!r}")
    return parts[0], parts[1]


def _parse_curve(text: str) -> EllipticCurve:
    a, b = _parse_pair(text, "--curve")
    return EllipticCurve(parse_rational(a), parse_rational(b))


def _parse_primes(text: Optional[str], config: Dict[str, Any]) -> List[int]:
    if text is None:
        return list(config["torsion"]["primes"])
    try:
        return [int(p) for p in text.split(",")]
    except ValueError as e:
        raise MalformedInputError(f"Malformed prime list {text!r}") from e


def _resolve_point(text: Optional[str], curve: EllipticCurve, points_source: str, what: str) -> ECPoint:
    if text is None:
        raise MalformedInputError(f"{what} is required for this operation")
    if text.strip().lower().startswith("p") and text.strip()[1:].isdigit():
        cfg = resolve_points(points_source)
        point = named_point(cfg, text)
        if point is None:
            raise MalformedInputError(f"Unknown point name {text!r}")
        if cfg.curve != curve:
            raise MalformedInputError(f"{text} belongs to {cfg.curve}, not {curve}")
        return point
    return ECPoint.parse(text)


def cmd_ec(args, config) -> Outcome:
    curve = _parse_curve(args.curve)
    op = args.op
    payload: Dict[str, Any] = {"curve": curve.to_dict(), "op": op}

    if op == "add":
        p = _resolve_point(args.p, curve, args.points, "--P")
        q = _resolve_point(args.q, curve, args.points, "--Q")
        result = ec_add(curve, p, q)
        payload.update(P=p.to_dict(), Q=q.to_dict(), result=result.to_dict())
        return payload, True, [f"{p} + {q} = {result}"]
    if op == "neg":
        p = _resolve_point(args.p, curve, args.points, "--P")
        result = ec_neg(curve, p)
        payload.update(P=p.to_dict(), result=result.to_dict())
        return payload, True, [f"-{p} = {result}"]
    if op == "mul":
        p = _resolve_point(args.p, curve, args.points, "--P")
        result = ec_scalar_mul(curve, args.n, p)
        payload.update(P=p.to_dict(), n=args.n, result=result.to_dict())
        return payload, True, [f"{args.n}*{p} = {result}"]
    if op == "count":
        if args.prime is None:
            raise MalformedInputError("--prime is required for count")
        count = count_points_fp(curve, args.prime, config["caps"]["max_count_prime"])
        payload.update(prime=args.prime, count=count)
        return payload, True, [f"|E(F_{args.prime})| = {count}"]
    if op == "torsion":
        certificate = torsion_is_trivial(curve, _parse_primes(args.primes, config))
        payload["certificate"] = certificate.to_dict()
        return payload, certificate.trivial, [
            f"orders {list(certificate.orders)}, gcd {certificate.gcd}: "
            + ("torsion trivial" if certificate.trivial else "inconclusive")
        ]
    if op == "two-torsion":
        witness = two_torsion_is_trivial(curve)
        payload["two_torsion"] = witness.to_dict()
        return payload, witness.trivial, [f"E(Q)[2] {'trivial' if witness.trivial else f'nontrivial, root {witness.root}'}"]
    if op == "halve":
        if args.target_x is None:
            raise MalformedInputError("--x is required for halve")
        witnesses = integral_halving_witnesses(curve, args.target_x)
        payload.update(target_x=args.target_x, witnesses=witnesses)
        return payload, True, [f"integral halving witnesses for x={args.target_x}: {witnesses}"]

    p = _resolve_point(args.p or "p1", curve, args.points, "--P")
    q = _resolve_point(args.q or "p3", curve, args.points, "--Q")
    certificate = independence_certificate(curve, p, q, _parse_primes(args.primes, config))
    payload["certificate"] = certificate.to_dict()
    lines = [f"independence of {p} and {q}: {'certified' if certificate.passed else 'FAILED'}"]
    lines.extend(f"  {reason}" for reason in certificate.reasons)
    return payload, certificate.passed, lines


def cmd_certify(args, config) -> Outcome:
    cfg = resolve_points(args.points)
    threads = config["certify"]["threads"]
    if args.all:
        certificate = certify_all_k(
            cfg,
            fallback_k=config["certify"]["fallback_k"],
            primes=config["torsion"]["primes"],
            threads=threads,
        )
    else:
        certificate = certify_k(cfg, args.k, threads=threads)

    lines = [f"{cfg.name}: k={certificate.k} {'PASS' if certificate.passed else 'FAIL'}"]
    if args.all and not certificate.all_k:
        lines.append(f"  all-k argument failed: {'; '.join(certificate.cone.reasons)}")
    if certificate.witness is not None:
        lines.append(f"  witness class: {certificate.witness}")
    return {"points": cfg.name, "certificate": certificate.to_dict()}, certificate.passed, lines


def cmd_system(args, config) -> Outcome:
    cfg = resolve_points(args.points)
    seed = config["generic"]["seed"]
    primes = check_primes(config, seed)
    problem = duval_problem(cfg, args.genus, config["caps"]["max_genus"])
    result = solve_system(problem, primes)
    payload = {"points": cfg.name, "genus": args.genus, "system": result.to_dict()}
    passed = result.modular_agrees
    lines = [
        f"L_{args.genus}: matrix {result.shape[0]}x{result.shape[1]}, rank {result.rank}, "
        f"projective dimension {result.projective_dimension} (virtual {result.virtual_dimension})",
    ]

    if args.verify_base_point:
        bp = base_point(cfg, args.genus, result)
        payload["base_point"] = bp.to_dict()
        passed = passed and bool(bp.verified)
        lines.append(f"base point {bp.point}: {'vanishes on every basis member' if bp.verified else 'NOT verified'}")

    if args.scan_singularities:
        member = generic_member(result, seed, config["generic"]["coefficient_range"])
        locus = singular_locus(member, config["caps"]["max_singular_degree"])
        payload["singularities"] = {
            "seed": seed,
            "locus": locus.to_dict(),
            "multiplicities": [
                {"expected": expected, "actual": actual}
                for _, expected, actual in exact_multiplicities(member, problem)
            ],
        }
        lines.append(f"generic member: {len(locus.points)} rational singular points")
    return payload, passed, lines


def cmd_cubic(args, config) -> Outcome:
    cfg = resolve_points(args.points)
    cubic = anticanonical_cubic(cfg, check_primes(config, config["generic"]["seed"]))
    mults = [m for _, _, m in exact_multiplicities(cubic, cubic_problem(cfg))]
    is_curve = cubic.primitive() == weierstrass_cubic(cfg.curve.a, cfg.curve.b).primitive()
    payload = {
        "points": cfg.name,
        "cubic": cubic.to_dict(),
        "multiplicities": mults,
        "equals_weierstrass_equation": is_curve,
    }
    passed = all(m == 1 for m in mults)
    return payload, passed, [f"J': {cubic}", f"multiplicities {mults}"]


def cmd_pencil(args, config) -> Outcome:
    invariants = pencil_invariants(args.genus)
    payload: Dict[str, Any] = {
        "invariants": invariants.to_dict(),
        "duval_locus_dimension": duval_locus_dimension(args.genus),
        "bn_divisors": [list(t) for t in brill_noether_divisor_triples(args.genus)],
    }
    lines = [
        f"g={args.genus}: lambda={invariants.lambda_}, delta0={invariants.delta0}, "
        f"delta1={invariants.delta1}, delta_rest={invariants.delta_rest}",
    ]
    passed = invariants.check_identities()
    if args.bn:
        r, d = (int(v) for v in _parse_int_pair(args.bn))
        data = bn_divisor_data(args.genus, r, d)
        payload["bn"] = data.to_dict()
        passed = passed and data.pullback_bracket == 0
        lines.append(f"rho({args.genus},{r},{d}) = {data.rho}; pullback {data.pullback_bracket}: {data.consequence}")
    return payload, passed, lines


def _parse_int_pair(text: str) -> Tuple[int, int]:
    a, b = _parse_pair(text, "--bn")
    try:
        return int(a), int(b)
    except ValueError as e:
        raise MalformedInputError(f"--bn must be two integers, got {text!r}") from e


def cmd_paper_suite(args, config) -> RunReport:
    """
    執行完整驗證套件

    參數:
        args: 解析後的參數
        config (Dict[str, Any]): 配置

    返回:
        RunReport: 報告
    """
    cfg = resolve_points(args.points)
    return run_paper_suite(
        cfg,
        config,
        command=_command_echo(args),
        k=args.k,
        seed=config["generic"]["seed"],
        threads=config["certify"]["threads"],
    )


HANDLERS = {
    "ec": cmd_ec,
    "certify": cmd_certify,
    "system": cmd_system,
    "cubic": cmd_cubic,
    "pencil": cmd_pencil,
}


def _command_echo(args) -> List[str]:
    semantic = {k: v for k, v in sorted(vars(args).items()) if k not in EXECUTION_FLAGS and k != "command"}
    return [args.command] + [f"{k}={v}" for k, v in semantic.items()]


def _load(args) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    if args.seed is not None:
        overrides["generic"] = {"seed": args.seed}
    if args.threads is not None:
        if args.threads < 1:
            raise MalformedInputError("--threads must be at least 1")
        overrides["certify"] = {"threads": args.threads}
    return load_config(args.config, overrides)


def _run(args, config) -> RunReport:
    if args.command == "paper-suite":
        return cmd_paper_suite(args, config)

    start = time.perf_counter()
    payload, passed, lines = HANDLERS[args.command](args, config)
    echo = _command_echo(args)
    identity = {"command": echo, "seed": config["generic"]["seed"]}
    if getattr(args, "points", None) is not None:
        identity["points"] = resolve_points(args.points).to_dict()
    report = RunReport(
        command=echo,
        config_digest=digest(identity),
        payload=payload,
        passed=passed,
        timing={args.command: time.perf_counter() - start},
    )
    report.payload["summary"] = lines
    return report


def _print_human(report: RunReport) -> None:
    for line in report.payload.get("summary", []):
        print(line)
    for result in report.results:
        print(f"[{'PASS' if result.passed else 'FAIL'}] {result.name}: {result.summary}")
    print("overall: " + ("PASS" if report.passed else "FAIL"))


def cmd_dispatch(argv: Optional[List[str]] = None) -> int:
    """
    解析參數並分派到子命令

    參數:
        argv (Optional[List[str]]): 參數列表，None 時取 sys.argv[1:]

    返回:
        int: 退出碼（0 成功，1 失敗，2 輸入錯誤）
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_MALFORMED if e.code not in (0, None) else EXIT_OK

    try:
        config = _load(args)
        setup_logging(config)
        report = _run(args, config)
    except OffCurveError as e:
        print(f"錯誤: {e} [{e.equation}]", file=sys.stderr)
        return EXIT_MALFORMED
    except (MalformedInputError, BadReductionError) as e:
        print(f"錯誤: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except DuvalError as e:
        logger.error("Internal consistency failure: %s", e)
        return EXIT_FAILED

    if args.json:
        print(report.to_json(include_timing=args.timing))
    else:
        _print_human(report)
    return EXIT_OK if report.passed else EXIT_FAILED


def main() -> None:
    """命令列入口"""
    sys.exit(cmd_dispatch(sys.argv[1:]))

