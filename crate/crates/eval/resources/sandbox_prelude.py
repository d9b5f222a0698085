import os
import sys

MARKER = "__SANDBOX_DENIED__ "

_script = sys.argv[1]
_denied = frozenset(m for m in sys.argv[2].split(",") if m)

_BLOCKED = {
    "socket.__new__": "network access",
    "socket.connect": "network access",
    "socket.bind": "network access",
    "socket.getaddrinfo": "network access",
    "socket.gethostbyname": "network access",
    "socket.sendto": "network access",
    "subprocess.Popen": "child process",
    "os.system": "child process",
    "os.exec": "child process",
    "os.posix_spawn": "child process",
    "os.spawn": "child process",
    "os.fork": "child process",
    "os.forkpty": "child process",
    "pty.spawn": "child process",
}


def _deny(reason):
    try:
        os.write(2, ("\n" + MARKER + reason + "\n").encode())
    except OSError:
        pass
    raise PermissionError("sandbox policy: " + reason)


def _hook(event, args):
    what = _BLOCKED.get(event)
    if what is not None:
        _deny(what + " (" + event + ")")
    if event == "import" and args and args[0]:
        if str(args[0]).split(".")[0] in _denied:
            _deny("import of " + str(args[0]))


class _DenyFinder:
    @staticmethod
    def find_spec(name, path=None, target=None):
        if name.split(".")[0] in _denied:
            _deny("import of " + name)
        return None


with open(_script, encoding="utf-8") as fh:
    _source = fh.read()

_code = compile(_source, "<tool>", "exec")
sys.argv = ["<tool>"]
sys.meta_path.insert(0, _DenyFinder)
sys.addaudithook(_hook)
del fh, _source
exec(_code, {"__name__": "__main__", "__builtins__": __builtins__})
