import os
import subprocess
import sys

import pytest

from geonest import kernel


def _backend_in_subprocess(prelude="", env_backend=None):
    env = dict(os.environ)
    env.pop("GEONEST_BACKEND", None)
    if env_backend is not None:
        env["GEONEST_BACKEND"] = env_backend
    code = prelude + "import geonest.kernel as k; print(k.BACKEND)"
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                          env=env, check=False)


def test_fallback_when_extension_missing():
    # a None entry in sys.modules makes the import fail as if the extension were absent
    proc = _backend_in_subprocess("import sys; sys.modules['geonest._ckernel'] = None; ")
    assert proc.returncode == 0
    assert proc.stdout.strip() == "python"


def test_forced_python_backend():
    proc = _backend_in_subprocess(env_backend="python")
    assert proc.stdout.strip() == "python"


def test_invalid_backend_name():
    proc = _backend_in_subprocess(env_backend="fortran")
    assert proc.returncode != 0
    assert "GEONEST_BACKEND" in proc.stderr


def test_forcing_missing_extension_fails():
    proc = _backend_in_subprocess("import sys; sys.modules['geonest._ckernel'] = None; ",
                                  env_backend="cython")
    assert proc.returncode != 0


def test_resolve():
    assert kernel.resolve("python") == "python"
    with pytest.raises(ValueError):
        kernel.resolve("fortran")
