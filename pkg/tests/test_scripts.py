import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("name,args,needle", [
    ("hurwitz_table.py", ["--d", "3", "--r", "2"], "ok"),
    ("string_solution.py", ["--D", "3"], "'exact': True"),
    ("hbar_expansion.py", ["--n", "1", "--D", "3", "--beta-order", "3"], "matches oracle"),
    ("run_verify.py", ["--dmax", "3", "--D", "3", "--beta-order", "3"], "PASS"),
])
def test_script_runs(name, args, needle):
    res = subprocess.run([sys.executable, str(SCRIPTS / name), *args],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert needle in res.stdout
    assert "MISMATCH" not in res.stdout and "DIFFERS" not in res.stdout
