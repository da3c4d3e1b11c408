"""Fetches configuration from a loopback endpoint at import time:
the scenario starts its own stub server, so everything stays local."""
import socket as _socket
import threading as _threading
import time as _time

import btp_params

_listener = _socket.socket(_socket.AF_INET, _socket.SOCK_STREAM)
_listener.bind(('127.0.0.1', 0))
_listener.listen(8)
_PORT = _listener.getsockname()[1]


def _serve(n):
    for _ in range(n):
        conn, _addr = _listener.accept()
        data = conn.recv(256)
        _time.sleep(btp_params.PROBE_DELAY_MS / 1000.0)
        conn.sendall(b'cfg:' + data)
        conn.close()


_thread = _threading.Thread(target=_serve, args=(btp_params.PROBE_COUNT,), daemon=True)
_thread.start()
CONFIG = {}
for _i in range(btp_params.PROBE_COUNT):
    with _socket.create_connection(('127.0.0.1', _PORT), timeout=10) as _conn:
        _conn.sendall(('key%d' % _i).encode())
        CONFIG['key%d' % _i] = _conn.recv(256).decode()
_thread.join(timeout=10)
_listener.close()
