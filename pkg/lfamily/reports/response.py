"""
报告封装与输出

统一的报告格式：
{
    "command": "moment",
    "version": "0.2.0",
    "config": {...},
    "wall_time": 1.23,
    "result": {...}
}
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml
from pydantic import BaseModel, Field

OUTPUT_FORMATS = ("json", "csv", "human")


class ReportEnvelope(BaseModel):
    """所有命令输出的外层结构"""

    command: str = Field(description="子命令")
    version: str = Field(description="代码版本")
    config: Dict[str, Any] = Field(default_factory=dict, description="参数与数值配置回显")
    wall_time: Optional[float] = Field(default=None, description="耗时（秒），--reproducible 时为 null")
    result: Any = Field(default=None, description="报告主体")


class ReportWriter:
    """
    报告写出器

    提供 json（键排序）、csv（报告的 csv_rows）与 human（YAML）三种格式
    """

    @staticmethod
    def to_dict(envelope: ReportEnvelope) -> Dict[str, Any]:
        return envelope.model_dump(mode="json")

    @staticmethod
    def json(envelope: ReportEnvelope) -> str:
        return json.dumps(ReportWriter.to_dict(envelope), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @staticmethod
    def rows(result: Any) -> List[Dict[str, Any]]:
        if hasattr(result, "csv_rows"):
            return result.csv_rows()
        if isinstance(result, BaseModel):
            return [result.model_dump(mode="json")]
        if isinstance(result, list):
            return [r.model_dump(mode="json") if isinstance(r, BaseModel) else dict(r) for r in result]
        return [dict(result)]

    @staticmethod
    def csv(envelope: ReportEnvelope) -> str:
        rows = ReportWriter.rows(envelope.result)
        fieldnames: List[str] = []
        for row in rows:
            for key in row:
                if key not in fieldnames:
                    fieldnames.append(key)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
        return buffer.getvalue()

    @staticmethod
    def human(envelope: ReportEnvelope) -> str:
        return yaml.safe_dump(ReportWriter.to_dict(envelope), allow_unicode=True, sort_keys=False)

    @classmethod
    def render(cls, envelope: ReportEnvelope, fmt: str = "json") -> str:
        if fmt not in OUTPUT_FORMATS:
            raise ValueError(f"未知的输出格式: {fmt}")
        return getattr(cls, fmt)(envelope)

    @classmethod
    def write(cls, envelope: ReportEnvelope, fmt: str = "json", out: Optional[Union[str, Path]] = None) -> str:
        """渲染报告；给定 out 时写入文件，否则返回文本供调用方输出"""
        text = cls.render(envelope, fmt)
        if out is not None:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        return text


def _cell(value: Any) -> Any:
    if isinstance(value, complex):
        return repr(value)
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    if isinstance(value, BaseModel):
        return json.dumps(value.model_dump(mode="json"), sort_keys=True, ensure_ascii=False)
    return value
