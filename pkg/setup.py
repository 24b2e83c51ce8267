from setuptools import setup, find_packages

setup(
    name="coordination_engine",
    version="0.1.0",
    packages=find_packages(include=["coordination_engine", "coordination_engine.*"]),
    install_requires=[
        "networkx>=2.6",
        "requests>=2.0.0",
    ],
    extras_require={
        "server": ["Flask>=2.0.0"],
        "test": ["pytest>=7.0", "hypothesis>=6.0", "Flask>=2.0.0"],
    },
    entry_points={
        "console_scripts": [
            "coordination=coordination_engine.shell.manager:main",
        ],
    },
    description="Behavioural automata for Reo connectors and Linda tuple spaces, with a round-based "
                "simulator. A Flask server is available as an extra.",
)
