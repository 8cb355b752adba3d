from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Issue:
    code: str
    message: str
    path: Optional[str] = None


@dataclass
class CheckReport:
    ok: bool = True
    checked: int = 0
    issues: List[Issue] = field(default_factory=list)

    def fail(self, code: str, message: str, path: Optional[str] = None):
        self.ok = False
        self.issues.append(Issue(code, message, path))

    def check(self, condition: bool, code: str, message: str, path: Optional[str] = None) -> bool:
        self.checked += 1
        if not condition:
            self.fail(code, message, path)
        return condition

    @property
    def codes(self) -> List[str]:
        return [i.code for i in self.issues]

    def __bool__(self) -> bool:
        return self.ok
