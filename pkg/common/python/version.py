"""
falg — Version string for CLI banners and logs.

Format: ``<ROLE> v<milestone>.<YMMDD>.<githash>``; the milestone comes from
the VERSION file at the repo root. Reports never include it, so their bytes
do not depend on the checkout.

Usage:
    from common.python.version import get_version
    get_version("FALG")   # -> "FALG v1.61017.a1b2c3d"
"""

import datetime
import os
import subprocess

_REPO_ROOT = os.path.join(os.path.dirname(__file__), "..", "..")


def milestone() -> str:
    try:
        with open(os.path.join(_REPO_ROOT, "VERSION")) as f:
            return f.read().strip() or "0"
    except OSError:
        return "0"


def git_hash() -> str:
    try:
        return subprocess.check_output(
            ["git", "rev-parse", "--short", "HEAD"],
            cwd=_REPO_ROOT,
            stderr=subprocess.DEVNULL,
        ).decode().strip() or "unknown"
    except (OSError, subprocess.CalledProcessError):
        return "unknown"


def get_version(role: str, today: datetime.date = None) -> str:
    today = today or datetime.date.today()
    ymmdd = f"{today.year % 10}{today.month:02d}{today.day:02d}"
    return f"{role} v{milestone()}.{ymmdd}.{git_hash()}"
