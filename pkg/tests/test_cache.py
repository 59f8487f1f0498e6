"""
结果缓存测试
"""

from concurrent.futures import ThreadPoolExecutor

import pytest

from lfamily.characters import character_table, enumerate_characters
from lfamily.core.cache import CacheEntry, ResultCache, canonical_key
from lfamily.exceptions import CacheError


class TestResultCache:
    def test_round_trip(self, tmp_path):
        cache = ResultCache(tmp_path, version="1")
        key = {"q": 7, "exponents": [2], "T": 15.0}
        cache.put("zeros", key, b"\x00payload\nwith newline")
        assert cache.get("zeros", key) == b"\x00payload\nwith newline"
        assert cache.get("zeros", {"q": 7, "exponents": [2], "T": 16.0}) is None

    def test_roundtrip_character_table(self, tmp_path):
        chi = enumerate_characters(100)[5]
        payload = character_table(chi).tobytes()
        entry = CacheEntry(namespace="characters", key=[chi.modulus, list(chi.exponents)], version="1", payload=payload)
        assert ResultCache(tmp_path, version="1").roundtrip(entry) == payload

    def test_key_order_does_not_matter(self, tmp_path):
        cache = ResultCache(tmp_path, version="1")
        cache.put("moments", {"a": 1, "b": 2}, b"x")
        assert cache.get("moments", {"b": 2, "a": 1}) == b"x"
        assert canonical_key({"b": 2, "a": 1}) == '{"a":1,"b":2}'

    def test_version_bump_invalidates(self, tmp_path):
        ResultCache(tmp_path, version="1").put("zeros", ["chi", 1], b"old")
        assert ResultCache(tmp_path, version="2").get("zeros", ["chi", 1]) is None
        assert ResultCache(tmp_path, version="1").get("zeros", ["chi", 1]) == b"old"

    def test_corrupt_file_is_a_miss(self, tmp_path):
        cache = ResultCache(tmp_path, version="1")
        path = cache.put("zeros", "k", b"data")
        path.write_bytes(b"not json\nrest")
        assert cache.get("zeros", "k") is None

    def test_concurrent_writers(self, tmp_path):
        cache = ResultCache(tmp_path, version="1")

        def write(i):
            cache.put("sieve", ["cell", i], str(i).encode())

        with ThreadPoolExecutor(max_workers=8) as pool:
            list(pool.map(write, range(64)))
        for i in range(64):
            assert cache.get("sieve", ["cell", i]) == str(i).encode()

    def test_unwritable_directory(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        cache = ResultCache(blocker / "cache", version="1")
        with pytest.raises(CacheError) as info:
            cache.put("zeros", "k", b"data")
        assert info.value.exit_code == 1

    def test_default_version_from_config(self, tmp_path):
        from lfamily.core.config import override_config

        override_config({"cache.version": "7"})
        assert ResultCache(tmp_path).version == "7"
