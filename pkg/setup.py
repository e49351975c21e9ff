"""Build script: compiles the optional RK4 extension.

The compiled kernel is a straight transcription of pandecon/_sir_py.py. If the
toolchain is missing the build degrades to the pure-Python backend instead of
failing the install. -ffp-contract=off keeps the C arithmetic free of fused
multiply-adds so both backends produce bit-identical trajectories.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any toolchain failure is non-fatal
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        import warnings

        warnings.warn(
            "pandecon._sir_core failed to compile (%s); "
            "falling back to the pure-Python kernel" % exc,
            stacklevel=1,
        )


def extensions():
    from Cython.Build import cythonize

    ext = Extension(
        "pandecon._sir_core",
        sources=["src/pandecon/_sir_core.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level="3")


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
