import pytest

from hcn import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile every jitted kernel once so test timings measure the math,
    # not the JIT
    kernels.hurwitz6_table(32)
    kernels.r3_table(32)
    kernels.r3_point(5)
    kernels.theta_counts((1, 1, 1, 0, 0, 0), 8)
    kernels.ternary_candidates(16)
