"""
测试公共夹具
"""

import pytest

from lfamily.characters import character_from_key
from lfamily.core.config import reload_config


@pytest.fixture(autouse=True)
def fresh_config():
    """每个测试使用独立的配置实例"""
    reload_config()
    yield
    reload_config()


@pytest.fixture
def chi3():
    """模 3 的实特征"""
    return character_from_key(3, [1])


@pytest.fixture
def chi4():
    """模 4 的实特征（Catalan 常数对应的 L 函数）"""
    return character_from_key(4, [1])


@pytest.fixture
def chi5_quartic():
    """模 5 的四阶特征"""
    return character_from_key(5, [1])


@pytest.fixture
def chi7_cubic():
    """模 7 的三阶特征"""
    return character_from_key(7, [2])
