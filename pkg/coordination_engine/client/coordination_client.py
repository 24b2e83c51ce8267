# Description: A client for the coordination server HTTP API.

import requests
import logging


class CoordinationClient:
    """
    A client for the coordination server.

    Parameters:
        base_url (str): Base URL of the coordination server (default: "http://127.0.0.1:5000")
        timeout (int): Request timeout in seconds (default: 80)
        logger: Parent logger; the client logs through a child of it
    """
    def __init__(self, base_url="http://127.0.0.1:5000", timeout=80, logger=None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        if logger:
            self.logger = logger.getChild("client")
        else:
            self.logger = logging.getLogger(__name__)
        self.logger.info(f"CoordinationClient initialized with base_url={self.base_url}, timeout={self.timeout}")

    @classmethod
    def from_config(cls, config, server_id="default", logger=None):
        """Client for a server named in an EngineConfig."""
        server = config.get_server_config(server_id)
        return cls(server.get("base_url", "http://127.0.0.1:5000"), server.get("timeout", 80), logger)

    def _make_request(self, method, endpoint, **kwargs):
        """Helper method to make HTTP requests with error handling."""
        url = f"{self.base_url}{endpoint}"
        timeout = kwargs.pop('timeout', self.timeout)

        try:
            self.logger.debug(f"Making {method} request to {url}")
            response = requests.request(method, url, timeout=timeout, **kwargs)

            if response.status_code == 404:
                error_msg = response.json().get('description', 'Resource not found')
                self.logger.error(f"Resource not found: {error_msg}")
                raise ValueError(f"Resource not found: {error_msg}")

            if response.status_code == 500:
                error_msg = response.json().get('description', 'Server error')
                self.logger.error(f"Server error: {error_msg}")
                raise RuntimeError(f"Server error: {error_msg}")

            # Rejected network specs come back as 400 with an error body
            if response.status_code == 400:
                body = response.json()
                self.logger.error(f"Request rejected: {body.get('message')}")
                return body

            response.raise_for_status()
            return response.json()
        except requests.exceptions.ConnectionError:
            self.logger.critical(f"Connection failed to {url} - is the server running?")
            return {"error": "connection_failed", "message": "Could not connect to the server. Please check if it's running."}
        except requests.exceptions.Timeout:
            self.logger.error(f"Request timed out after {timeout}s: {url}")
            return {"error": "timeout", "message": f"Request timed out after {timeout} seconds."}
        except requests.exceptions.RequestException as e:
            self.logger.error(f"Request error: {e}")
            return {"error": "request_error", "message": str(e)}

    def check_server_health(self):
        """
        Check whether the server is up.

        Returns:
            dict: {"status": "healthy", "version": ...} or an error dictionary
        """
        return self._make_request('GET', '/health')

    def compose(self, spec, bound=None):
        """
        Flattened product automaton of a network spec.

        Args:
            spec (dict): Network spec
            bound (int): State bound (server default when None)

        Returns:
            dict: Automaton export, with "truncated" set when the bound was hit
        """
        return self._make_request('POST', '/compose', json=spec, params=self._params(bound=bound))

    def explore(self, spec, bound=None):
        """Number of global states and transitions reachable round by round."""
        return self._make_request('POST', '/explore', json=spec, params=self._params(bound=bound))

    def run(self, spec, rounds=None, seed=None, policy=None):
        """
        Simulate a network.

        Returns:
            list: Trace records, header first
        """
        params = self._params(rounds=rounds, seed=seed, policy=policy)
        return self._make_request('POST', '/run', json=spec, params=params)

    def check(self, spec, depth=None):
        """Locality, CA product and Linda correspondence report."""
        return self._make_request('POST', '/check', json=spec, params=self._params(depth=depth))

    @staticmethod
    def _params(**values):
        return {key: value for key, value in values.items() if value is not None}
