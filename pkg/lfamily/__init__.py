"""
lfamily 数值实验包

固定阶 Dirichlet 特征族 O_j(Q) 上的 L 函数数值实验，包含：
- arith/: 整数分解、积性函数与单位群
- characters/: 特征、特征族与 Gauss 和
- lfunc/: L 函数求值、Dirichlet 多项式与自适应积分
- moments/: 族的矩与标度实验
- sieve/: 大筛、Gallagher 与均值检验
- zeros/: 零点计数、临界线零点、检测器与零点密度上界
- reports/: 报告模型与输出
- core/: 配置、日志、并行执行与缓存
"""

__version__ = "0.2.0"

__all__ = [
    "__version__",
]
