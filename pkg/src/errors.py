"""
Exceções do streamkit.

Todas derivam de StreamkitError; as de contrato e de dados também são ValueError,
para que chamadores que já tratam ValueError continuem funcionando.
"""


class StreamkitError(Exception):
    """Erro base da biblioteca."""


class ContractError(StreamkitError, ValueError):
    """Violação de pré-condição (dimensões, faixas de parâmetros, etc)."""


class NoCentersError(ContractError):
    """Conjunto de centros vazio."""

    def __init__(self, message: str = "no centers"):
        super().__init__(message)


class DegenerateInstanceError(ContractError):
    """Instância em que todo denominador de custo é zero."""


class ResourceGuardError(StreamkitError):
    """Enumeração acima do limite configurado."""


class InputDataError(StreamkitError, ValueError):
    """Dados de entrada inválidos (fora da grade, dimensão errada, linhas malformadas)."""


class FormatError(InputDataError):
    """Payload binário malformado (magic, versão ou tamanho)."""


class UsageError(StreamkitError):
    """Combinação de flags semanticamente inválida."""
