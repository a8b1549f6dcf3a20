"""Client used by the CLI: in-process ASGI by default, HTTP on request.

Keeping one code path through the service request models means the CLI
exercises exactly what a network caller would get, without needing a
running server for local use.
"""

from __future__ import annotations

import asyncio
from typing import Any

import httpx


class ServiceClient:
    """POST/GET against either a base URL or the in-process app."""

    def __init__(self, server: str | None = None):
        self._server = server
        self._app = None
        if server is None:
            from .service import create_app

            self._app = create_app()

    def _request(self, method: str, path: str, payload: dict | None) -> httpx.Response:
        if self._server is not None:
            with httpx.Client(base_url=self._server, timeout=None) as client:
                return client.request(method, path, json=payload)

        async def run() -> httpx.Response:
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://qrsums.local", timeout=None
            ) as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(run())

    def post(self, path: str, payload: dict) -> dict[str, Any]:
        resp = self._request("POST", path, payload)
        if resp.status_code != 200:
            raise ServiceError(resp.status_code, _detail(resp))
        return resp.json()

    def get(self, path: str) -> dict[str, Any]:
        resp = self._request("GET", path, None)
        if resp.status_code != 200:
            raise ServiceError(resp.status_code, _detail(resp))
        return resp.json()


class ServiceError(RuntimeError):
    def __init__(self, status: int, detail: str):
        super().__init__(f"service returned {status}: {detail}")
        self.status = status
        self.detail = detail


def _detail(resp: httpx.Response) -> str:
    try:
        body = resp.json()
    except ValueError:
        return resp.text
    if isinstance(body, dict) and "detail" in body:
        return str(body["detail"])
    return resp.text
