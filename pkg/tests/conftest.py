import pytest

from nichols_a2 import ext, resolution as rsl
from nichols_a2.qalgebra import (
    MODE_FULL,
    MODE_GRADED,
    make_algebra,
    standard_braiding,
)
from nichols_a2.scalars import make_field


def build_algebra(N, field_spec, q12_exp=1, mode=MODE_FULL):
    field = make_field(field_spec)
    return make_algebra(
        standard_braiding(N, field, q12_exp=q12_exp, mode=mode), field
    )


@pytest.fixture(scope="session")
def algebra_n3_cyc():
    return build_algebra(3, "cyclotomic:9")


@pytest.fixture(scope="session")
def algebra_n3_fp():
    return build_algebra(3, "fp:19:9")


@pytest.fixture(scope="session")
def algebra_n5_fp():
    return build_algebra(5, "fp:31:15")


@pytest.fixture(scope="session")
def algebra_n2():
    return build_algebra(2, "cyclotomic:4")


@pytest.fixture(scope="session")
def algebra_n3_graded():
    return build_algebra(3, "cyclotomic:9", mode=MODE_GRADED)


@pytest.fixture(scope="session")
def res_n3_fp(algebra_n3_fp):
    return rsl.build_resolution(algebra_n3_fp, 9)


@pytest.fixture(scope="session")
def res_n3_cyc(algebra_n3_cyc):
    return rsl.build_resolution(algebra_n3_cyc, 9)


@pytest.fixture(scope="session")
def res_n2(algebra_n2):
    return rsl.build_resolution(algebra_n2, 11)


@pytest.fixture(scope="session")
def res_n5_fp(algebra_n5_fp):
    return rsl.build_resolution(algebra_n5_fp, 7)


@pytest.fixture(scope="session")
def segment_n3_cyc(algebra_n3_cyc):
    return rsl.build_minimal_segment(algebra_n3_cyc)


@pytest.fixture(scope="session")
def cochain_n3_fp(res_n3_fp):
    return ext.hom_complex(res_n3_fp)


@pytest.fixture(scope="session")
def cochain_n2(res_n2):
    return ext.hom_complex(res_n2)


@pytest.fixture(scope="session")
def cochain_segment_n3(segment_n3_cyc):
    return ext.hom_complex(segment_n3_cyc)
