"""Check reports shared by the verification layers."""

from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    status: str  # "pass" | "fail" | "skip"
    lhs: str = ""
    rhs: str = ""
    witness: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.status != "fail"

    def as_dict(self):
        d = {"name": self.name, "status": self.status, "lhs": self.lhs, "rhs": self.rhs}
        if self.witness:
            d["witness"] = self.witness
        return d
