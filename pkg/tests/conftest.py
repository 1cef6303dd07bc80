"""测试公共夹具"""

import pytest

from geomrank.config.config import reset_config
from geomrank.gallery import example2, fano as build_fano, projective_space
from geomrank.verify import resolve_builtin, resolve_polar


@pytest.fixture(autouse=True)
def _fresh_config():
    """每个测试使用全新的全局配置"""
    reset_config()
    yield
    reset_config()


@pytest.fixture(scope="session")
def fano():
    return build_fano()


@pytest.fixture(scope="session")
def pg32():
    return projective_space(3, 2)


@pytest.fixture(scope="session")
def example2_4():
    return example2(4)


@pytest.fixture(scope="session")
def sp42():
    return resolve_polar("sp:2:2")


@pytest.fixture(scope="session")
def q42():
    return resolve_polar("o-par:2:2")


@pytest.fixture(scope="session")
def q43():
    return resolve_polar("o-par:2:3")


@pytest.fixture(scope="session")
def qminus52():
    return resolve_polar("o-minus:2:2")


@pytest.fixture
def clear_registry():
    """需要重新解析内置几何时使用"""
    resolve_builtin.cache_clear()
    resolve_polar.cache_clear()
    yield
    resolve_builtin.cache_clear()
    resolve_polar.cache_clear()
