"""
Ponto de entrada do explorador de coresets no Streamlit.
"""
import streamlit as st

ST_PAGE_TITLE = "Explorador de Coresets"
ST_PAGE_ICON = "📉"

# IMPORTANTE: st.set_page_config deve ser a primeira chamada do Streamlit
st.set_page_config(
    page_title=ST_PAGE_TITLE,
    page_icon=ST_PAGE_ICON,
    layout="wide"
)

from src.dashboard import main

if __name__ == "__main__":
    main()
