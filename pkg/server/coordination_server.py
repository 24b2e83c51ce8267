#!/usr/bin/env python3
# Coordination server: composes, explores, simulates and checks networks of
# behavioural automata posted as JSON network specs.
# The server is intended to be used with CoordinationClient from the
# coordination_engine package.
# The server is not secure and should not be exposed to the internet.

import os
import datetime
import logging
from flask import Flask, jsonify, request
from coordination_engine import __version__ as version
from coordination_engine.config import EngineConfig
from coordination_engine.errors import BoundExceeded, CoordinationError
from coordination_engine.logging_setup import setup_logging
from coordination_engine.shell import commands
from coordination_engine.shell.spec import spec_from_dict

app = Flask(__name__)
config = EngineConfig(os.environ.get("COORDINATION_SERVER_CONFIG"))
logger = logging.getLogger("coordination_engine.server")


# Helper functions
def get_spec():
    """Network spec from the JSON request body."""
    data = request.get_json(silent=True)
    if data is None:
        raise CoordinationError("Request body must be a JSON network spec")
    return spec_from_dict(data, name=data.get("name", "network") if isinstance(data, dict) else "network")


def int_arg(name):
    """Integer query parameter, falling back to the engine settings."""
    value = request.args.get(name)
    if value is None:
        return config.get_setting(name)
    try:
        return int(value)
    except ValueError:
        raise CoordinationError(f"Query parameter {name} must be an integer, got {value!r}")


@app.errorhandler(CoordinationError)
def handle_coordination_error(error):
    logger.error(f"Rejected request to {request.path}: {error}")
    return jsonify({"error": type(error).__name__, "message": str(error)}), 400


@app.route('/health', methods=['GET'])
def health_check():
    """Return health status of the coordination server."""
    return jsonify({
        "status": "healthy",
        "timestamp": datetime.datetime.now().isoformat(),
        "version": version
    })


@app.route('/compose', methods=['POST'])
def compose():
    """Flattened product automaton of the posted network."""
    spec = get_spec()
    try:
        return jsonify(commands.cmd_compose(spec, bound=int_arg("bound"), strict=True))
    except BoundExceeded as e:
        logger.warning(str(e))
        return jsonify(e.partial)


@app.route('/explore', methods=['POST'])
def explore():
    """Global reachability summary of the posted network."""
    result = commands.cmd_explore(get_spec(), bound=int_arg("bound"))
    return jsonify({key: result[key] for key in ("states", "transitions", "truncated")})


@app.route('/run', methods=['POST'])
def run():
    """Simulate the posted network; returns the trace records."""
    policy = request.args.get("policy", config.get_setting("policy"))
    if policy not in ("random", "lex", "maximal"):
        raise CoordinationError(f"Unknown policy {policy!r}")
    records = commands.cmd_run(get_spec(), rounds=int_arg("rounds"), seed=int_arg("seed"), policy=policy)
    return jsonify(records)


@app.route('/check', methods=['POST'])
def check():
    """Run the applicable checks on the posted network."""
    return jsonify(commands.cmd_check(get_spec(), depth=int_arg("depth"), bound=int_arg("bound")))


if __name__ == '__main__':
    setup_logging(config)
    # Run on all interfaces on port 5000.
    app.run(host='0.0.0.0', port=5000)
