"""
Explorador interativo de coresets (Streamlit).
"""
import logging
import os
import tempfile

import numpy as np
import pandas as pd
import streamlit as st

from src.config import DEFAULT_DELTA, DEFAULT_EPSILON, DEFAULT_K, DEFAULT_SEED, DEFAULT_Z
from src.errors import StreamkitError
from src.geometry.types import Dataset
from src.loaders import TableLoader
from src.pipeline import ClusteringPipeline, PipelineConfig
from src.reporting import coreset_scatter, evaluate_clustering

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def load_uploaded(uploaded, weighted: bool) -> Dataset:
    """
    Lê o CSV enviado e translada as coordenadas para a grade [1, Delta]^d.
    """
    with tempfile.NamedTemporaryFile(delete=False, suffix=".csv") as tmp:
        tmp.write(uploaded.getvalue())
        path = tmp.name
    try:
        X = TableLoader(path, weighted).to_dataset()
    finally:
        os.unlink(path)
    if len(X):
        points = X.points - X.points.min(axis=0) + 1
        X = Dataset(points, X.weights, int(points.max()))
    return X


def run_pipeline(X: Dataset, k: int, z: float, epsilon: float, seed: int):
    """Passa X pelo pipeline e devolve (coreset, centros, métricas)."""
    config = PipelineConfig(k=k, d=X.d, z=z, epsilon=epsilon, delta=DEFAULT_DELTA, seed=seed,
                            grid_delta=max(X.delta or 1, 1), n_bound=max(len(X), 2))
    pipeline = ClusteringPipeline(config)
    for point, weight in zip(X.points, X.weights):
        pipeline.stream_update(point, weight)
    return pipeline.current_coreset(), pipeline.current_centers(), pipeline.metrics()


def main():
    """Função principal do explorador."""

    st.title("Explorador de Coresets")
    st.markdown("""
    Envie um CSV de pontos inteiros (uma linha por ponto), escolha os parâmetros e veja
    o coreset mantido pelo pipeline de streaming, o erro relativo de custo e os centros.
    """)

    with st.sidebar:
        st.header("Parâmetros")
        k = st.number_input("k (número de centros)", min_value=1, max_value=50, value=DEFAULT_K)
        z = st.selectbox("z (expoente)", [1.0, 2.0], index=1 if DEFAULT_Z == 2.0 else 0)
        epsilon = st.slider("epsilon", min_value=0.05, max_value=0.5, value=DEFAULT_EPSILON, step=0.05)
        seed = st.number_input("Semente", min_value=0, value=DEFAULT_SEED)
        weighted = st.checkbox("Última coluna traz pesos", value=False)
        queries = st.slider("Consultas aleatórias na avaliação", min_value=10, max_value=500, value=100, step=10)

    uploaded = st.file_uploader("Faça upload do CSV de pontos", type=["csv"])
    if uploaded is None:
        st.info("Aguardando um arquivo CSV.")
        return

    try:
        X = load_uploaded(uploaded, weighted)
    except StreamkitError as e:
        st.error(f"Erro ao ler o arquivo: {e}")
        logger.exception("Erro ao ler o arquivo enviado")
        return
    if len(X) == 0:
        st.warning("O arquivo não tem pontos.")
        return

    if st.button("Construir coreset", type="primary"):
        with st.spinner("Processando o stream..."):
            S, centers, metrics = run_pipeline(X, int(k), float(z), float(epsilon), int(seed))
            report = evaluate_clustering(X, S, int(k), float(z), queries=int(queries),
                                         local_search_sets=5, seed=int(seed))
        st.success(f"Coreset com {len(S)} pontos para {len(X)} pontos de entrada.")

        col1, col2, col3 = st.columns(3)
        col1.metric("Tamanho do coreset", len(S))
        col2.metric("Erro relativo máximo", f"{report['max_error']:.4f}")
        col3.metric("Erro relativo médio", f"{report['mean_error']:.4f}")

        st.pyplot(coreset_scatter(X, S, centers))

        st.subheader("Métricas do pipeline")
        st.json(metrics)

        frame = pd.DataFrame(S.points, columns=[f"x{i}" for i in range(S.d)])
        frame["weight"] = S.weights
        st.download_button(
            label="Baixar coreset (CSV)",
            data=frame.to_csv(index=False).encode('utf-8'),
            file_name="coreset.csv",
            mime="text/csv"
        )


if __name__ == "__main__":
    main()
