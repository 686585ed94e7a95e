import argparse
import json
import logging
import shlex
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

try:
    import readline
except ImportError:  # Windows
    readline = None

from .banner import print_banner
from .cap import CapSpace, breakpoints, classify, embed_i, tower_extract
from .checkstatus import CheckStatus
from .conv import (
    CarrierMode,
    ConvSpace,
    closed_sets,
    is_diagonal,
    is_pretopological,
    is_topological,
)
from .document import dump_space, family_labels, format_family, parse_hyper_filter, parse_set
from .harness.core import build_report, emit_report, save_result, suite_report
from .harness.registry import all_checks
from .harness.scenarios import SCENARIOS, run_scenario
from .harness.search import DEFAULT_SEARCH_COUNT, SearchTarget, search_counterexample
from .hyper import HyperSpace, Structure, evaluate, hyper_cap, hyper_tower
from .metrics import summarize
from .values import Value, format_value, parse_value
from .workbench import Space, Workbench

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3

# acima disso a tabela de uma camada mostra só os núcleos unitários
FULL_LAYER_KERNELS = 63


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperconv", add_help=False)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    subparsers = parser.add_subparsers(dest="cmd")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Imprime o relatório JSON em vez da tabela")

    # hyperconv check P3.json
    p_check = subparsers.add_parser("check", parents=[common], help="Validar um documento de espaço")
    p_check.add_argument("file", help="Arquivo, fixture embarcada ou @NOME")

    # hyperconv classify Q2.json
    p_classify = subparsers.add_parser("classify", parents=[common], help="Classificar um espaço CAP")
    p_classify.add_argument("file")

    # hyperconv hyper Q2.json --structure uK --filter '{"kernel":[["0"]]}'
    p_hyper = subparsers.add_parser("hyper", parents=[common], help="Tabela de uma estrutura do hiperespaço")
    p_hyper.add_argument("file")
    p_hyper.add_argument("--structure", required=True, choices=[s.value for s in Structure])
    p_hyper.add_argument(
        "--hyper-carrier", default=CarrierMode.CLOSED.value, choices=[m.value for m in CarrierMode]
    )
    p_hyper.add_argument("--filter", default=None, help='Família-núcleo, ex.: {"kernel":[["a"],["b","c"]]}')
    p_hyper.add_argument("--at", default=None, help="Restringe a tabela a um ponto A, ex.: {a,b}")

    # hyperconv tower Q2.json [--eps 1/2] [--structure lK]
    p_tower = subparsers.add_parser("tower", parents=[common], help="Torre de convergências do espaço")
    p_tower.add_argument("file")
    p_tower.add_argument("--eps", default=None, help="Mostra só a camada em ε")
    p_tower.add_argument("--structure", default=None, choices=[Structure.UK.value, Structure.LK.value])
    p_tower.add_argument(
        "--hyper-carrier", default=CarrierMode.CLOSED.value, choices=[m.value for m in CarrierMode]
    )

    # hyperconv verify --suite all --max-n 3 --seed 42
    p_verify = subparsers.add_parser("verify", parents=[common], help="Rodar uma suíte de checks")
    p_verify.add_argument("--suite", default="all", choices=list(SCENARIOS))
    p_verify.add_argument("--max-n", type=int, default=3)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--count", type=int, default=None)
    p_verify.add_argument("--checks", nargs="*", default=None, help="Ids de checks (aceita prefixo*)")
    p_verify.add_argument("--output", default=None, help="Grava o relatório JSON neste caminho")
    p_verify.add_argument("--list", action="store_true", help="Lista os checks registrados")
    p_verify.add_argument("--timing", action="store_true", help="Inclui tempos no relatório")

    # hyperconv search --target lK-vs-lV --max-n 3
    p_search = subparsers.add_parser("search", parents=[common], help="Buscar contraexemplo para uma desigualdade")
    p_search.add_argument("--target", required=True, choices=[t.value for t in SearchTarget])
    p_search.add_argument("--max-n", type=int, default=3)
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--count", type=int, default=DEFAULT_SEARCH_COUNT)

    # sessão: load / ls / show / drop
    p_load = subparsers.add_parser("load", help="Carregar um espaço com um nome")
    p_load.add_argument("name")
    p_load.add_argument("file")

    subparsers.add_parser("ls", help="Listar espaços carregados")

    p_show = subparsers.add_parser("show", help="Mostrar um espaço carregado")
    p_show.add_argument("name")

    p_drop = subparsers.add_parser("drop", help="Descartar um espaço carregado")
    p_drop.add_argument("name")

    subparsers.add_parser("help", help="Mostrar ajuda")

    return parser


def _print_json(payload: Dict[str, Any]) -> None:
    sys.stdout.write(emit_report(payload).decode("utf-8"))


def _as_cap(space: Space) -> CapSpace:
    return embed_i(space) if isinstance(space, ConvSpace) else space


def _space_label(space: Space, ref: str) -> str:
    return space.name or ref


def handle_check(bench: Workbench, args: argparse.Namespace) -> int:
    space = bench.read(args.file)
    kind = "conv" if isinstance(space, ConvSpace) else "cap"
    if args.json:
        _print_json(build_report(
            "check", {"file": args.file}, None, CheckStatus.PASS, space=dump_space(space),
        ))
        return EXIT_OK

    print(f"{_space_label(space, args.file)}: {kind} válido, {space.n} pontos")
    if isinstance(space, ConvSpace):
        closed = closed_sets(space)
        print(f"  centrado:    {space.centered}")
        print(f"  fechados:    {format_family(space.carrier, closed)}")
    else:
        print(f"  completion:  {space.completion.value}")
        print(f"  valores:     {', '.join(format_value(v) for v in breakpoints(space))}")
    return EXIT_OK


def _conv_flags(space: ConvSpace) -> Dict[str, bool]:
    return {
        "pretopological": is_pretopological(space),
        "topological": is_topological(space),
        "diagonal": is_diagonal(space),
    }


def handle_classify(bench: Workbench, args: argparse.Namespace) -> int:
    space = bench.read(args.file)
    cap = _as_cap(space)
    report = classify(cap).to_dict(cap.carrier)
    conv_flags = _conv_flags(space) if isinstance(space, ConvSpace) else None

    if args.json:
        payload: Dict[str, Any] = {"classes": report}
        if conv_flags is not None:
            payload["conv"] = conv_flags
        _print_json(build_report("classify", {"file": args.file}, None, CheckStatus.PASS, **payload))
        return EXIT_OK

    print(f"{'CLASSE':20} {'VALOR':10}")
    print("-" * 60)
    for key, value in report.items():
        shown = "{" + ",".join(value) + "}" if isinstance(value, list) else str(value)
        print(f"{key:20} {shown:10}")
    if conv_flags is not None:
        print("-" * 60)
        for key, value in conv_flags.items():
            print(f"{key:20} {str(value):10}")
    return EXIT_OK


def _hyper_space(space: Space, mode_text: str) -> HyperSpace:
    return HyperSpace.over(_as_cap(space), CarrierMode(mode_text))


def handle_hyper(bench: Workbench, args: argparse.Namespace) -> int:
    space = bench.read(args.file)
    h = _hyper_space(space, args.hyper_carrier)
    base = h.base.carrier
    structure = Structure(args.structure)

    if args.filter is not None:
        families = [parse_hyper_filter(args.filter, base)]
    else:
        families = [[C] for C in h.sets]
    if args.at is not None:
        A = parse_set(args.at, base)
        h.check_point(A)
        targets = [A]
    else:
        targets = list(h.sets)

    rows: List[Dict[str, Any]] = []
    for family in families:
        F = h.filter(family)
        for A in targets:
            rows.append({
                "filter": family_labels(base, F.kernel_family),
                "point": base.labels_of(A),
                "value": format_value(evaluate(h, structure, F, A)),
                "_shown": (format_family(base, F.kernel_family), base.format_mask(A)),
            })

    if args.json:
        parameters = {
            "file": args.file,
            "structure": structure.value,
            "hyper_carrier": h.mode.value,
            "filter": args.filter,
            "at": args.at,
        }
        clean = [{k: v for k, v in r.items() if not k.startswith("_")} for r in rows]
        _print_json(build_report("hyper", parameters, None, CheckStatus.PASS, rows=clean))
        return EXIT_OK

    print(f"{'FILTRO':28} {'A':14} {'λ_' + structure.value:>10}")
    print("-" * 60)
    for r in rows:
        shown_filter, shown_point = r["_shown"]
        print(f"{shown_filter:28} {shown_point:14} {r['value']:>10}")
    return EXIT_OK


def _layer_lines(layer: ConvSpace) -> List[Tuple[str, str]]:
    carrier = layer.carrier
    if (1 << carrier.n) - 1 <= FULL_LAYER_KERNELS:
        kernels = list(carrier.nonempty_subsets())
    else:
        kernels = [1 << i for i in range(carrier.n)]
    return [(carrier.format_mask(b), carrier.format_mask(layer.lim_table[b])) for b in kernels]


def _tower_levels(space: Space, args: argparse.Namespace) -> List[Tuple[Value, ConvSpace]]:
    eps = parse_value(args.eps) if args.eps is not None else None
    if args.structure is None:
        tower = tower_extract(_as_cap(space))
        if eps is not None:
            return [(eps, tower.layer_at(eps))]
        return list(tower.levels)

    h = _hyper_space(space, args.hyper_carrier)
    structure = Structure(args.structure)
    thresholds = [eps] if eps is not None else breakpoints(hyper_cap(h, structure))
    return [(e, hyper_tower(h, structure, e)) for e in thresholds]


def handle_tower(bench: Workbench, args: argparse.Namespace) -> int:
    space = bench.read(args.file)
    levels = _tower_levels(space, args)

    if args.json:
        parameters = {
            "file": args.file,
            "eps": args.eps,
            "structure": args.structure,
            "hyper_carrier": args.hyper_carrier if args.structure else None,
        }
        payload = [
            {"eps": format_value(eps), "centered": layer.centered, "lim": dump_space(layer)["lim"]}
            for eps, layer in levels
        ]
        _print_json(build_report("tower", parameters, None, CheckStatus.PASS, levels=payload))
        return EXIT_OK

    for eps, layer in levels:
        print(f"=== ε = {format_value(eps)} ===")
        print(f"{'NÚCLEO':28} {'LIMITES':28}")
        print("-" * 60)
        for kernel, limit in _layer_lines(layer):
            print(f"{kernel:28} {limit:28}")
        print()
    return EXIT_OK


def handle_verify(bench: Workbench, args: argparse.Namespace) -> int:
    if args.list:
        print(f"{'CHECK':40} {'ESCOPO':8} ENUNCIADO")
        print("-" * 90)
        for chk in all_checks():
            print(f"{chk.id:40} {chk.scope:8} {chk.statement}")
        return EXIT_OK

    result = run_scenario(args.suite, seed=args.seed, max_n=args.max_n, count=args.count, checks=args.checks)
    if args.output:
        save_result(result, Path(args.output), timing=args.timing)

    if args.json:
        _print_json(suite_report(result, timing=args.timing))
    else:
        print(f"{'CHECK':40} {'STATUS':8} {'PASS':>7} {'FAIL':>7} {'SKIP':>7}")
        print("-" * 75)
        for c in result.checks:
            print(f"{c.id:40} {c.status.value:8} {c.passed:>7} {c.failed:>7} {c.skipped:>7}")
        summary = summarize(result)
        print("-" * 75)
        print(f"suíte {result.name}: {summary['instances']} instâncias, status {summary['status']}")
        for check_id in summary["failing_checks"]:
            witness = result.check(check_id).witnesses[:1]
            print(f"\nFALHA {check_id}:")
            print(json.dumps(witness, indent=2, ensure_ascii=False))
        if args.output:
            print(f"relatório: {args.output}")

    return EXIT_CHECK_FAILED if result.status is CheckStatus.FAIL else EXIT_OK


def handle_search(bench: Workbench, args: argparse.Namespace) -> int:
    result = search_counterexample(args.target, max_n=args.max_n, seed=args.seed, count=args.count)
    if args.json:
        _print_json(result.to_report())
        return EXIT_OK

    print(f"alvo: {result.target.value}  instâncias examinadas: {result.instances_examined}")
    if result.found:
        print("testemunha encontrada:")
        print(json.dumps(result.witness, indent=2, ensure_ascii=False))
    else:
        print("nenhuma testemunha; streams esgotados:")
        for label in result.exhausted:
            print(f"  {label}")
    return EXIT_OK


def handle_load(bench: Workbench, args: argparse.Namespace) -> int:
    entry = bench.load(args.name, args.file)
    print(f"Espaço {entry.name} carregado ({entry.kind}, {entry.space.n} pontos)")
    return EXIT_OK


def handle_ls(bench: Workbench, args: argparse.Namespace) -> int:
    entries = bench.list_spaces()
    if not entries:
        print("Nenhum espaço carregado.")
        return EXIT_OK
    print(f"{'NAME':15} {'KIND':6} {'N':>3} {'SOURCE':30}")
    print("-" * 60)
    for e in entries:
        print(f"{e.name:15} {e.kind:6} {e.space.n:>3} {e.source:30}")
    return EXIT_OK


def handle_show(bench: Workbench, args: argparse.Namespace) -> int:
    entry = bench.get(args.name)
    print(json.dumps(dump_space(entry.space), indent=2, ensure_ascii=False))
    return EXIT_OK


def handle_drop(bench: Workbench, args: argparse.Namespace) -> int:
    bench.drop(args.name)
    print(f"Espaço {args.name} descartado")
    return EXIT_OK


def handle_help(parser: argparse.ArgumentParser) -> int:
    parser.print_help()
    print("\nComandos disponíveis no shell interativo:")
    print("  check FILE | classify FILE")
    print("  hyper FILE --structure S [--hyper-carrier closed|all|rclosed] [--filter JSON] [--at A]")
    print("  tower FILE [--eps E] [--structure uK|lK]")
    print("  verify [--suite NOME] [--max-n N] [--seed S] [--list]")
    print("  search --target ALVO [--max-n N]")
    print("  load NAME FILE | ls | show NAME | drop NAME")
    print("  help")
    print("  exit / quit")
    print("\nFILE pode ser um caminho, uma fixture embarcada (P3, Q2) ou @NAME.")
    return EXIT_OK


HANDLERS = {
    "check": handle_check,
    "classify": handle_classify,
    "hyper": handle_hyper,
    "tower": handle_tower,
    "verify": handle_verify,
    "search": handle_search,
    "load": handle_load,
    "ls": handle_ls,
    "show": handle_show,
    "drop": handle_drop,
}


def _set_verbosity(verbose: int) -> None:
    if verbose >= 2:
        logging.getLogger().setLevel(logging.DEBUG)
    elif verbose == 1:
        logging.getLogger().setLevel(logging.INFO)


def dispatch_command(bench: Workbench, parser: argparse.ArgumentParser, argv: Sequence[str]) -> int:
    """
    Interpreta argv e executa o comando sobre a bancada de espaços, tanto no
    modo de um comando só quanto no shell interativo. Devolve o código de saída.
    """
    if not argv:
        return EXIT_OK

    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT_ERROR

    _set_verbosity(args.verbose)
    cmd = args.cmd

    try:
        if cmd == "help":
            return handle_help(parser)
        handler = HANDLERS.get(cmd)
        if handler is None:
            print(f"Comando desconhecido: {cmd!r}", file=sys.stderr)
            return EXIT_INPUT_ERROR
        return handler(bench, args)
    except (ValueError, OSError) as e:
        print(f"Erro: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except RuntimeError as e:
        # InconsistencyError: duas computações discordaram, não é falha de check
        logger.debug("erro interno", exc_info=True)
        print(f"Erro interno (inconsistência do hyperconv): {e}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR


def repl() -> int:
    """
    Shell interativo do hyperconv.
    """
    bench = Workbench()
    parser = build_parser()
    print_banner()

    print("hyperconv interactive shell! Type 'help' for commands, 'exit' to quit.")

    while True:
        try:
            line = input("hyperconv> ").strip()
        except (EOFError, KeyboardInterrupt):
            print()
            break

        if not line:
            continue

        if line in {"exit", "quit"}:
            break

        if readline is not None:
            readline.add_history(line)

        try:
            argv = shlex.split(line)
        except ValueError as e:
            print(f"Erro ao interpretar comando: {e}")
            continue

        dispatch_command(bench, parser, argv)

    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Se argv vazio/None → entra no modo interativo (REPL).
    Se argv tem algo (ex.: ['classify', 'Q2']) → executa só aquele comando.
    """
    if argv is None:
        argv = sys.argv[1:]

    logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT, stream=sys.stderr)

    if not argv:
        return repl()

    bench = Workbench()
    parser = build_parser()
    return dispatch_command(bench, parser, argv)


if __name__ == "__main__":
    raise SystemExit(main())
