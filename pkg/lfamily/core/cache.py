"""
结果缓存模块

磁盘缓存：每个条目一个文件，位于 cache_dir/namespace/ 下，
文件名为键的规范 JSON 的 SHA-256；文件内容为一行 JSON 头（版本戳、键、创建时间）
加原始负载字节。版本不匹配视为未命中
"""

import hashlib
import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional, Union

from loguru import logger as loguru_logger
from pydantic import BaseModel, Field

from ..exceptions import CacheError
from .config import get_config_str

logger = loguru_logger.bind(name="cache")


def canonical_key(key: Any) -> str:
    """将键转为规范 JSON 字符串（排序键、无多余空白）"""
    return json.dumps(key, sort_keys=True, separators=(",", ":"), default=str)


class CacheEntry(BaseModel):
    """缓存条目"""

    namespace: str = Field(description="命名空间")
    key: Any = Field(description="键（特征键或参数元组）")
    version: str = Field(description="代码版本戳")
    payload: bytes = Field(description="负载")
    created_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat(), description="创建时间")


class ResultCache:
    """基于文件的结果缓存"""

    def __init__(self, cache_dir: Union[str, Path], version: Optional[str] = None):
        """
        初始化缓存

        Args:
            cache_dir: 缓存根目录
            version: 版本戳，None 时读取 cache.version
        """
        self.cache_dir = Path(cache_dir)
        self.version = str(version if version is not None else get_config_str("cache.version", "1"))

    def _path(self, namespace: str, key: Any) -> Path:
        digest = hashlib.sha256(canonical_key(key).encode("utf-8")).hexdigest()
        return self.cache_dir / namespace / digest

    def _ensure_dir(self, directory: Path) -> None:
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise CacheError(f"无法创建缓存目录: {directory}", path=str(directory), details={"error": str(e)})
        if not os.access(directory, os.W_OK):
            raise CacheError(f"缓存目录不可写: {directory}", path=str(directory))

    def store(self, entry: CacheEntry) -> Path:
        """
        写入缓存条目（原子替换）

        Args:
            entry: 缓存条目，其版本戳被替换为当前缓存版本

        Returns:
            条目文件路径
        """
        path = self._path(entry.namespace, entry.key)
        self._ensure_dir(path.parent)
        header = {"version": self.version, "key": json.loads(canonical_key(entry.key)), "created_at": entry.created_at}
        data = json.dumps(header, sort_keys=True).encode("utf-8") + b"\n" + entry.payload
        try:
            fd, tmp_name = tempfile.mkstemp(dir=str(path.parent), prefix=".tmp-")
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
            os.replace(tmp_name, path)
        except OSError as e:
            raise CacheError(f"写入缓存失败: {path}", path=str(path), details={"error": str(e)})
        logger.debug(f"缓存写入 {entry.namespace}/{path.name[:12]}")
        return path

    def put(self, namespace: str, key: Any, payload: bytes) -> Path:
        """写入负载的便捷方法"""
        return self.store(CacheEntry(namespace=namespace, key=key, version=self.version, payload=payload))

    def load(self, namespace: str, key: Any) -> Optional[CacheEntry]:
        """
        读取缓存条目

        Returns:
            命中时返回条目；文件缺失、损坏或版本不匹配时返回 None
        """
        path = self._path(namespace, key)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            return None
        except OSError as e:
            raise CacheError(f"读取缓存失败: {path}", path=str(path), details={"error": str(e)})

        head, sep, payload = raw.partition(b"\n")
        if not sep:
            return None
        try:
            header = json.loads(head.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            logger.warning(f"缓存文件头损坏，忽略: {path}")
            return None
        if header.get("version") != self.version:
            logger.debug(f"缓存版本不匹配 ({header.get('version')} != {self.version})")
            return None
        if canonical_key(header.get("key")) != canonical_key(json.loads(canonical_key(key))):
            return None
        return CacheEntry(
            namespace=namespace,
            key=key,
            version=header["version"],
            payload=payload,
            created_at=header.get("created_at", ""),
        )

    def get(self, namespace: str, key: Any) -> Optional[bytes]:
        """读取负载的便捷方法"""
        entry = self.load(namespace, key)
        return entry.payload if entry is not None else None

    def roundtrip(self, entry: CacheEntry) -> bytes:
        """
        写入条目后立即读回

        Returns:
            读回的负载，与写入的字节一致

        Raises:
            CacheError: 目录不可写，或读回未命中
        """
        path = self.store(entry)
        loaded = self.load(entry.namespace, entry.key)
        if loaded is None:
            raise CacheError(f"写入后读回未命中: {path}", path=str(path))
        return loaded.payload
