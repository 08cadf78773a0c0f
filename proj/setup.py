"""Builds the _hdis extension by driving the CMake project."""

import subprocess
import sys
from pathlib import Path

import pybind11
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        out_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DHDIS_BUILD_PYTHON=ON",
                "-DHDIS_BUILD_TESTS=OFF",
                "-DHDIS_BUILD_CLI=OFF",
                f"-DHDIS_PYTHON_OUTPUT_DIR={out_dir}",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_hdis", "-j"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("hdis._hdis")],
    cmdclass={"build_ext": CMakeBuild},
)
