"""
Configuração do pipeline de clustering em streaming.
"""
import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

from ..config import (
    ALPHA_DEFAULT,
    CONSTANT_BLOCK_FACTOR,
    CONSTANT_EPSILON,
    DEFAULT_DELTA,
    DEFAULT_EPSILON,
    DEFAULT_GRID_DELTA,
    DEFAULT_N_BOUND,
    DEFAULT_SEED,
    DEFAULT_Z,
    EPS_PRIME_CONSTANT,
    H_MAX_DEFAULT,
    IOTA_DEFAULT,
    JL_FACTOR,
    LAMBDA_SCALE_DEFAULT,
    REDUCE_SIZE_CONSTANT,
)
from ..encoding.coreset_codec import eps_prime_schedule
from ..errors import ContractError
from ..geometry.types import ClusteringParams
from ..sensitivity.sampler import default_lambda


@dataclass
class PipelineConfig:
    """
    Parâmetros do pipeline; valores derivados (eps'', delta'', eps', lambda) são propriedades.
    """

    k: int
    d: int
    z: float = DEFAULT_Z
    epsilon: float = DEFAULT_EPSILON
    delta: float = DEFAULT_DELTA
    seed: int = DEFAULT_SEED
    grid_delta: int = DEFAULT_GRID_DELTA
    n_bound: int = DEFAULT_N_BOUND
    iota: float = IOTA_DEFAULT
    alpha: float = ALPHA_DEFAULT
    lambda_scale: float = LAMBDA_SCALE_DEFAULT
    use_jl: Optional[bool] = None  # None: automático (d > dimensão JL)
    use_rough_filter: bool = True
    batch_size: Optional[int] = None  # padrão k
    h_max: int = H_MAX_DEFAULT
    eps_prime_constant: float = EPS_PRIME_CONSTANT
    reduce_constant: float = REDUCE_SIZE_CONSTANT
    block_size: Optional[int] = None  # padrão: tamanho alvo do reduce
    record_timings: bool = False

    def __post_init__(self):
        # Valida k, z, epsilon, delta e a semente
        params = self.params
        self.k, self.seed = params.k, params.seed
        if int(self.d) != self.d or self.d < 1:
            raise ContractError(f"d deve ser inteiro >= 1: {self.d}")
        self.d = int(self.d)
        if self.grid_delta < 1:
            raise ContractError(f"Delta deve ser >= 1: {self.grid_delta}")
        if self.n_bound < 1:
            raise ContractError(f"limite de n deve ser >= 1: {self.n_bound}")
        if not 0 < self.iota <= 1:
            raise ContractError(f"iota deve estar em (0,1]: {self.iota}")
        if not 0 < self.alpha < 1:
            raise ContractError(f"alpha deve estar em (0,1): {self.alpha}")
        if self.lambda_scale <= 0 or self.eps_prime_constant <= 0 or self.reduce_constant <= 0:
            raise ContractError("constantes de escala devem ser positivas")
        if self.h_max < 1:
            raise ContractError(f"altura máxima deve ser >= 1: {self.h_max}")
        if self.batch_size is not None and self.batch_size < 1:
            raise ContractError(f"tamanho de lote inválido: {self.batch_size}")
        if self.block_size is not None and self.block_size < 1:
            raise ContractError(f"tamanho de bloco inválido: {self.block_size}")

    @property
    def params(self) -> ClusteringParams:
        return ClusteringParams(self.k, self.z, self.epsilon, self.delta, self.seed)

    @property
    def effective_batch_size(self) -> int:
        return int(self.batch_size or self.k)

    @property
    def level_epsilon(self) -> float:
        """eps'' = eps / (4 H_max)."""
        return self.epsilon / (4.0 * self.h_max)

    @property
    def level_fail_prob(self) -> float:
        """delta'' = delta * eps / log2(n Delta)."""
        return self.delta * self.epsilon / max(math.log2(self.n_bound * self.grid_delta), 1.0)

    @property
    def eps_prime(self) -> float:
        return eps_prime_schedule(self.epsilon, self.z, self.k, self.d, self.n_bound, self.grid_delta,
                                  self.eps_prime_constant)

    @property
    def constant_eps_prime(self) -> float:
        return eps_prime_schedule(CONSTANT_EPSILON, self.z, self.k, self.d, self.n_bound, self.grid_delta,
                                  self.eps_prime_constant)

    @property
    def constant_block_size(self) -> int:
        return CONSTANT_BLOCK_FACTOR * self.k

    @property
    def jl_dimension(self) -> int:
        return int(math.ceil(JL_FACTOR * math.log(max(self.n_bound, 2))))

    @property
    def jl_enabled(self) -> bool:
        if self.use_jl is None:
            return self.d > self.jl_dimension
        return bool(self.use_jl)

    @property
    def lam(self) -> float:
        return default_lambda(self.d, self.k, self.epsilon, self.n_bound, self.grid_delta, self.lambda_scale)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PipelineConfig":
        known = {f.name for f in fields(cls)}
        return cls(**{key: value for key, value in data.items() if key in known})
