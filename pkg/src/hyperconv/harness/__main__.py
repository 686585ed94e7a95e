import argparse
import json
from pathlib import Path
from typing import List, Optional

from ..metrics import summarize
from .core import auto_output_path, save_result
from .scenarios import SCENARIOS, run_scenario


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m hyperconv.harness",
        description="Executa suítes de checks do hyperconv.",
    )

    sub = parser.add_subparsers(dest="suite", required=True)

    for name in SCENARIOS:
        p = sub.add_parser(name, help=f"Suíte '{name}'.")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-n", type=int, default=3)
        p.add_argument("--count", type=int, default=None)
        p.add_argument("--checks", nargs="*", default=None)
        p.add_argument("--timing", action="store_true")
        p.add_argument("--output", type=Path, default=None)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)

    result = run_scenario(
        args.suite,
        seed=args.seed,
        max_n=args.max_n,
        count=args.count,
        checks=args.checks,
    )

    output_path = args.output or auto_output_path(result.name)
    save_result(result, output_path, timing=args.timing)

    print("\n=== RESUMO FINAL ===")
    print(json.dumps(summarize(result), indent=2, ensure_ascii=False))
    print(f"relatório: {output_path}")

    return 0 if result.status.value != "FAIL" else 1


if __name__ == "__main__":
    import sys
    raise SystemExit(main(sys.argv[1:]))
