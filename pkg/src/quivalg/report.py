"""Check reports: ordered pass/fail entries with witnesses."""

from __future__ import annotations


class Report:
    def __init__(self, title):
        self.title = title
        self.entries = []

    def add(self, name, passed, detail=None):
        self.entries.append((name, bool(passed), detail))
        return passed

    def extend(self, other):
        for name, passed, detail in other.entries:
            self.entries.append((f"{other.title}:{name}", passed, detail))

    @property
    def ok(self):
        return all(passed for _, passed, _ in self.entries)

    def failures(self):
        return [name for name, passed, _ in self.entries if not passed]

    def to_json(self):
        checks = {}
        for name, passed, detail in self.entries:
            entry = {"pass": passed}
            if detail is not None:
                entry["witness"] = detail
            checks[name] = entry
        return {"title": self.title, "ok": self.ok, "checks": checks}

    def __str__(self):
        lines = [f"[{self.title}]"]
        for name, passed, detail in self.entries:
            mark = "pass" if passed else "FAIL"
            suffix = "" if detail is None else f"  ({detail})"
            lines.append(f"  {mark}  {name}{suffix}")
        return "\n".join(lines)
