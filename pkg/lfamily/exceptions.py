"""
lfamily 异常模块

提供数值实验相关的异常类，每个异常类携带 CLI 退出码
"""

from typing import Any, Dict, Optional


class LFamilyException(Exception):
    """lfamily 异常基类"""

    exit_code: int = 1

    def __init__(
        self,
        message: str = "lfamily 错误",
        code: str = "LFAMILY_ERROR",
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.code = code
        self.details = details or {}
        super().__init__(self.message)


class ConfigurationError(LFamilyException):
    """配置错误异常"""

    exit_code = 3

    def __init__(
        self,
        message: str = "配置错误",
        config_key: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.config_key = config_key
        super().__init__(message, "CONFIGURATION_ERROR", details)


class DomainError(LFamilyException):
    """定义域错误异常（参数不满足前置条件）"""

    exit_code = 1

    def __init__(
        self,
        message: str = "参数超出定义域",
        parameter: Optional[str] = None,
        value: Any = None,
        details: Optional[Dict[str, Any]] = None,
        code: str = "DOMAIN_ERROR"
    ):
        self.parameter = parameter
        self.value = value
        super().__init__(message, code, details)


class PoleError(DomainError):
    """在 s = 1 的极点处求值"""

    def __init__(self, message: str = "s = 1 是极点", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, "s", 1, details, code="POLE_ERROR")


class NotAUnitError(DomainError):
    """离散对数的自变量与模不互素（对应 χ(n) = 0 的分支）"""

    def __init__(self, n: int, modulus: int):
        super().__init__(
            f"{n} 与模 {modulus} 不互素",
            "n",
            n,
            {"modulus": modulus},
            code="NOT_A_UNIT",
        )


class SpacingError(DomainError):
    """点集的间距或区间约束被破坏"""

    def __init__(self, message: str, pair: Optional[tuple] = None, details: Optional[Dict[str, Any]] = None):
        self.pair = pair
        merged = dict(details or {})
        if pair is not None:
            merged["pair"] = list(pair)
        super().__init__(message, "points", pair, merged, code="SPACING_ERROR")


class AccuracyError(LFamilyException):
    """在预算内无法达到要求的精度"""

    exit_code = 2

    def __init__(
        self,
        message: str = "无法达到要求的精度",
        partial: Optional[float] = None,
        details: Optional[Dict[str, Any]] = None,
        code: str = "ACCURACY_ERROR"
    ):
        self.partial = partial
        super().__init__(message, code, details)


class ContourNearZeroError(AccuracyError):
    """围道过于接近零点，最小步长下相位变化仍超过 π/2"""

    def __init__(self, message: str = "围道过于接近零点", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, None, details, code="CONTOUR_NEAR_ZERO")


class WindingRejectedError(AccuracyError):
    """环绕数残差过大，结果被拒绝而不是四舍五入"""

    def __init__(self, residual: float, details: Optional[Dict[str, Any]] = None):
        self.residual = residual
        super().__init__(f"环绕数残差 {residual:.3g} 超过 0.25", None, details, code="WINDING_REJECTED")


class InternalConsistencyError(LFamilyException):
    """内部一致性检查失败"""

    exit_code = 2

    def __init__(
        self,
        message: str = "内部一致性检查失败",
        check: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.check = check
        super().__init__(message, "INTERNAL_CONSISTENCY_ERROR", details)


class CacheError(LFamilyException):
    """缓存目录不可用（环境错误）"""

    exit_code = 1

    def __init__(
        self,
        message: str = "缓存不可用",
        path: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.path = path
        super().__init__(message, "CACHE_ERROR", details)
