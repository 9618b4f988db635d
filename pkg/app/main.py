import glob
import logging
import os

import pandas as pd
import plotly.express as px
import streamlit as st

# Import our modules
from config import config
from cli import MODES, run_solve
from core.arena import Player
from core.product import product_from_dfa
from core.weights import INF
from errors import GameError
from formats.dot import dot_exporter
from formats.instance import parse_instance, parse_instance_text, serialize_instance
from formats.report import strategy_to_dict, trace_frame, value_frame
from oracle.generators import generate_family_15_1, generate_family_15_2, random_instance
from oracle.verify import FAIL, PASS, SKIP, instance_verifier
from utils.helpers import setup_logging

# Setup logging
setup_logging()

def main():
    st.set_page_config(
        page_title=config.PAGE_TITLE,
        page_icon="♾️",
        layout="wide"
    )

    st.title("♾️ Limit Game Solver")
    st.markdown("Optimal values and finite-state strategies for weighted limit games over a DFA")

    # Sidebar
    st.sidebar.title("Views")
    view = st.sidebar.selectbox(
        "Choose View",
        ["Solve Instance", "Verify Instances", "Generate Family"]
    )

    if view == "Solve Instance":
        solve_instance_view()
    elif view == "Verify Instances":
        verify_instances_view()
    else:
        generate_family_view()

def fixture_paths():
    """Instance files shipped in the data directory"""
    return sorted(glob.glob(os.path.join(config.DATA_DIR, "*.yaml")))

def load_instance(key):
    """Pick a fixture or upload an instance; returns (name, arena, dfa) or None"""
    source = st.radio("Instance Source", ["Fixture", "Upload"], key=f"{key}_source")

    try:
        if source == "Fixture":
            paths = fixture_paths()
            if not paths:
                st.info(f"No instance files found in {config.DATA_DIR}")
                return None
            path = st.selectbox("Fixture", paths, format_func=os.path.basename, key=f"{key}_fixture")
            arena, dfa = parse_instance(path)
            return os.path.basename(path), arena, dfa

        uploaded = st.file_uploader("Instance YAML", type=["yaml", "yml"], key=f"{key}_upload")
        if uploaded is None:
            return None
        arena, dfa = parse_instance_text(uploaded.getvalue().decode("utf-8"))
        return uploaded.name, arena, dfa
    except GameError as e:
        logging.error(f"Could not load instance: {e}")
        st.error(f"Invalid instance: {e}")
        return None

def solve_instance_view():
    st.header("Solve Instance")

    loaded = load_instance("solve")
    if loaded is None:
        return
    name, arena, dfa = loaded

    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric("Vertices", arena.num_vertices)
    with col2:
        st.metric("Edges", arena.num_edges)
    with col3:
        st.metric("DFA States", dfa.size)

    mode = st.radio("Objective", MODES, index=MODES.index("limit"), horizontal=True)

    if st.button("Solve", type="primary"):
        with st.spinner(f"Solving {name}..."):
            try:
                st.session_state['solved'] = (name, mode, run_solve(arena, dfa, mode))
            except GameError as e:
                logging.error(f"Solving {name} failed: {e}")
                st.error(f"Solver Error: {e}")
                st.session_state.pop('solved', None)
                return
        logging.info(f"Solved {name} in {mode} mode")

    # keep the last solve across reruns
    solved = st.session_state.get('solved')
    if solved and solved[:2] == (name, mode):
        solution, values, strategies = solved[2]
        display_solution(arena, dfa, solution, values, strategies)

def display_solution(arena, dfa, solution, values, strategies):
    """Display values, trace, strategies and the arena drawing"""
    tab1, tab2, tab3, tab4 = st.tabs(["📊 Values", "📈 Iterations", "🧠 Strategies", "🕸️ Arena"])

    with tab1:
        st.subheader("Optimal Values")
        winning = sum(1 for value in values.values() if value != INF)
        col1, col2 = st.columns(2)
        with col1:
            st.metric("Finite Values", f"{winning}/{arena.num_vertices}")
        with col2:
            st.metric("Iterations", solution.iterations)
        st.dataframe(value_frame(values, arena), use_container_width=True)

    with tab2:
        st.subheader("Ranking Trace")
        st.dataframe(trace_frame(solution), use_container_width=True)
        create_rank_chart(solution)

    with tab3:
        st.subheader("Finite-State Strategies")
        for strategy in strategies:
            with st.expander(f"Player {int(strategy.player)} (memory size {strategy.size})"):
                st.json(strategy_to_dict(strategy))

    with tab4:
        st.subheader("Arena")
        product = solution.product
        st.graphviz_chart(dot_exporter.export_base(product, values, strategies[Player.ZERO]))
        if st.checkbox("Show product arena"):
            st.graphviz_chart(dot_exporter.export_product(product, solution.fixpoint))

def create_rank_chart(solution):
    """Rank evolution per base vertex; infinite ranks are left as gaps"""
    product = solution.product
    rows = []
    for j, ranking in enumerate(solution.trace):
        for v in range(product.base.num_vertices):
            value = ranking[product.initial_vertex(v)]
            rows.append({
                'Iteration': j,
                'Vertex': product.base.name(v),
                'Rank': None if value == INF else int(value)
            })

    fig = px.line(pd.DataFrame(rows), x='Iteration', y='Rank', color='Vertex', markers=True,
                  title="Rank Evolution")
    st.plotly_chart(fig, use_container_width=True)

def verify_instances_view():
    st.header("Verify Instances")
    st.markdown("Cross-check the solvers against the threshold, enumeration and Büchi oracles")

    paths = st.multiselect("Fixtures", fixture_paths(), default=fixture_paths(), format_func=os.path.basename)
    force = st.checkbox("Ignore the product size guard")

    if st.button("Run Verification", type="primary"):
        results = []
        with st.spinner("Running oracles..."):
            for path in paths:
                try:
                    arena, dfa = parse_instance(path)
                    results.append(instance_verifier.verify(arena, dfa, name=os.path.basename(path), force=force))
                except GameError as e:
                    logging.error(f"Verification of {path} failed: {e}")
                    st.warning(f"{os.path.basename(path)}: {e}")

        if not results:
            st.info("Nothing was verified")
            return
        display_verification(instance_verifier.to_frame(results))

def display_verification(frame):
    counts = frame['status'].value_counts()

    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric("Passed", int(counts.get(PASS, 0)))
    with col2:
        st.metric("Failed", int(counts.get(FAIL, 0)))
    with col3:
        st.metric("Skipped", int(counts.get(SKIP, 0)))

    if counts.get(FAIL, 0):
        st.error("Some properties failed")
    else:
        st.success("All checked properties hold")

    fig = px.bar(frame.groupby(['instance', 'status']).size().reset_index(name='Count'),
                 x='instance', y='Count', color='status', title="Checks per Instance",
                 color_discrete_map={PASS: '#2ca02c', FAIL: '#d62728', SKIP: '#7f7f7f'})
    st.plotly_chart(fig, use_container_width=True)
    st.dataframe(frame, use_container_width=True)

def generate_family_view():
    st.header("Generate Family")

    family = st.selectbox("Family", ["15.1", "15.2", "random"])

    try:
        if family == "15.1":
            n = st.number_input("n", min_value=1, value=2)
            s = st.number_input("s", min_value=2, value=3)
            arena, dfa = generate_family_15_1(int(n), int(s))
            file_name = f"family_15_1_n{n}_s{s}.yaml"
        elif family == "15.2":
            m = st.number_input("m", min_value=2, value=2)
            n = st.number_input("n", min_value=2, value=2)
            W = st.number_input("W", min_value=0, value=5)
            arena, dfa = generate_family_15_2(int(m), int(n), int(W))
            file_name = f"family_15_2_m{m}_n{n}_W{W}.yaml"
        else:
            vertices = st.number_input("Vertices", min_value=1, value=config.RANDOM_VERTICES)
            states = st.number_input("DFA States", min_value=1, value=config.RANDOM_DFA_STATES)
            cap = st.number_input("Weight Cap", min_value=0, value=config.RANDOM_WEIGHT_CAP)
            seed = st.number_input("Seed", min_value=0, value=0)
            arena, dfa = random_instance(int(vertices), int(states), int(cap), int(seed))
            file_name = f"random_{vertices}_{states}_{cap}_seed{seed}.yaml"
    except GameError as e:
        st.error(f"Invalid parameters: {e}")
        return

    product = product_from_dfa(arena, dfa)
    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric("Vertices", arena.num_vertices)
    with col2:
        st.metric("Edges", arena.num_edges)
    with col3:
        st.metric("Product Vertices", product.num_vertices)

    text = serialize_instance(arena, dfa)
    st.code(text, language="yaml")
    st.download_button("Download Instance", text, file_name=file_name, mime="text/yaml")

if __name__ == "__main__":
    main()
