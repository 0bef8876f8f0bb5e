"""
Configurações globais do streamkit (valores padrão da biblioteca e da CLI).
"""
import os

# Semente padrão; a CLI usa --seed, depois STREAMKIT_SEED, depois este valor
DEFAULT_SEED = 0
SEED_ENV_VAR = "STREAMKIT_SEED"

# Parâmetros de clustering
DEFAULT_K = 5
DEFAULT_Z = 2.0
DEFAULT_EPSILON = 0.2
DEFAULT_DELTA = 0.01
DEFAULT_N_BOUND = 100_000  # limite superior do tamanho do stream (dobrado se ultrapassado)
DEFAULT_GRID_DELTA = 2**16  # Delta: coordenadas inteiras em [1, Delta]

# Quadtree grosseira
IOTA_DEFAULT = 0.25  # ramificação zeta = max(2, ceil(n^iota))
ALPHA_DEFAULT = 0.3  # fator grosseiro kappa = n^alpha
KAPPA_MIN = 4.0  # kappa precisa ser > 2
TREE_EXTRA_RETRIES = 10  # tentativas = ceil(log2 n) + este valor

# Amostragem por sensibilidade
LAMBDA_SCALE_DEFAULT = 1.0  # constante oculta de lambda
EPS_PRIME_CONSTANT = 100.0  # c no cronograma de eps'
REDUCE_SIZE_CONSTANT = 5e-4  # C no tamanho alvo do reduce
REDUCE_MIN_SIZE_FACTOR = 4  # alvo nunca menor que este fator vezes k
H_MAX_DEFAULT = 6  # altura máxima configurada da árvore merge-and-reduce
CONSTANT_BLOCK_FACTOR = 8  # bloco da árvore de fator constante = 8k
CONSTANT_EPSILON = 0.5  # precisão da árvore de fator constante

# Busca local
LOCAL_SEARCH_MAX_CANDIDATES = 256  # candidatos a troca por iteração

# Guardas dos oráculos
MEDOID_SUBSET_GUARD = 1_000_000
GRID_TUPLE_GUARD = 10_000_000
GRID_RESOLUTION_DEFAULT = 64
LP_ORACLE_DIRECTIONS = 100_000

# Codificação
I16_EXPONENT_CAP = 32767
I32_EXPONENT_CAP = 2**31 - 1

# Subespaço Lp
LEWIS_TOL = 1e-8
LEWIS_MAX_ITERS = 200
LEWIS_DAMPING = 0.5  # theta para p >= 4
CRUDE_SKETCH_TRIALS = 21
ROW_SAMPLE_CONSTANT = 2e-4  # C no tamanho alvo do reduce de linhas
ANCHOR_ROW_FACTOR = 4  # linhas da âncora = fator * d * log(d)
DEFAULT_ENTRY_BOUND = 2**31  # M padrão
DEFAULT_P = 2.0
EMBED_LAMBDA_SCALE_DEFAULT = 1.0  # lambda = escala * log(d / delta) / eps^2
RANK_TOL = 1e-10  # valores singulares relativos abaixo disto contam como zero
CONDITIONING_DIRECTIONS = 2000  # direções aleatórias para medir o condicionamento

# Johnson-Lindenstrauss
JL_FACTOR = 8.0  # m = ceil(JL_FACTOR * ln n)

# Saída
METRICS_SCHEMA_VERSION = 1


def resolve_seed(seed=None) -> int:
    """
    Resolve a semente efetiva.

    Args:
        seed: Semente explícita (ou None)

    Returns:
        Semente inteira de 64 bits
    """
    if seed is not None:
        return int(seed)
    env_value = os.environ.get(SEED_ENV_VAR, "")
    if env_value.strip():
        return int(env_value)
    return DEFAULT_SEED
