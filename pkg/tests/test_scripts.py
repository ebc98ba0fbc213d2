import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"

CASES = {
    "decoherence_dynamics": ["--p-points", "11"],
    "psc_vs_lambda": ["--n", "6"],
    "discord_vs_distance": ["--r-max", "3", "--lambdas", "0.7", "1.1"],
    "finite_temperature_qcp": ["--kts", "0.1", "--rs", "1", "--grid-n", "32"],
}


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(CASES))
def test_script_runs(name, tmp_path):
    proc = subprocess.run([sys.executable, str(SCRIPTS / f"{name}.py"), "--out-dir", str(tmp_path),
                           *CASES[name]], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    csvs = list(tmp_path.glob("*.csv"))
    assert csvs and all(p.read_text().count("\n") >= 2 for p in csvs)
