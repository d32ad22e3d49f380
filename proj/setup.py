"""CMake bridge: the python extension is built by the same CMakeLists as the
rest of the project, then copied to wherever setuptools expects it."""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S", str(source),
            "-B", str(build_dir),
            "-DPARTLAT_PYTHON_ONLY=ON",
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        try:
            import pybind11

            configure.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core"], check=True
        )

        built = sorted((build_dir / "bindings").glob("_core.*"))
        if not built:
            raise RuntimeError("cmake did not produce the _core extension")
        target = Path(self.get_ext_fullpath(ext.name)).resolve()
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[0], target)


setup(
    ext_modules=[CMakeExtension("partlat._core")],
    cmdclass={"build_ext": CMakeBuild},
)
