from typing import Any, Dict, List

from .checkstatus import CheckStatus


def collect_suite_metrics(result: Any) -> Dict[str, Any]:
    """
    Coleta totais a partir de um SuiteResult passado como argumento.

    Retorna um dicionário com:
      - instances, checks (quantas instâncias e quantos checks rodaram)
      - passed, failed, skipped (somas de outcomes por instância)
      - checks_passing, checks_failing, checks_skipped (status agregado por check)
      - failing_checks (ids dos checks com falha, em ordem)
    """
    checks = getattr(result, "checks", []) or []

    counts = {"passed": 0, "failed": 0, "skipped": 0}
    by_status = {CheckStatus.PASS: 0, CheckStatus.FAIL: 0, CheckStatus.SKIPPED: 0}
    failing: List[str] = []

    for c in checks:
        counts["passed"] += c.passed
        counts["failed"] += c.failed
        counts["skipped"] += c.skipped
        by_status[c.status] += 1
        if c.status is CheckStatus.FAIL:
            failing.append(c.id)

    return {
        "instances": getattr(result, "instances", 0),
        "checks": len(checks),
        "passed": counts["passed"],
        "failed": counts["failed"],
        "skipped": counts["skipped"],
        "checks_passing": by_status[CheckStatus.PASS],
        "checks_failing": by_status[CheckStatus.FAIL],
        "checks_skipped": by_status[CheckStatus.SKIPPED],
        "failing_checks": failing,
    }


def summarize(result: Any) -> Dict[str, Any]:
    """Resumo curto para a tabela da CLI."""
    metrics = collect_suite_metrics(result)
    return {
        "status": result.status.value,
        "instances": metrics["instances"],
        "checks": metrics["checks"],
        "failed": metrics["failed"],
        "failing_checks": metrics["failing_checks"],
    }
