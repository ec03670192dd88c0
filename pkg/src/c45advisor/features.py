"""Advising attributes derived from student course records, and a synthetic generator.

The synthetic generator labels students with a fixed rule set standing in
for the advisor's judgement:

* ``Dismissed`` students are ``In Risk``; ``Graduated`` students are ``Normal``.
* ``In Study`` students with a credit-hour difference of at most 36 are
  ``Normal``.
* Otherwise ``In Study`` students are ``Near To Risk`` when their total
  registered hours are at most 137 or above 157, and ``Normal`` in between.

Sampling ranges (all credit hours are integers):

* ``Total_Reg_C_H`` uniform on [12, 180]
* ``Diff_G_R_C_H`` uniform on [0, min(Total_Reg_C_H, 90)], and
  ``Total_Gain_C_H = Total_Reg_C_H - Diff_G_R_C_H``
* ``Total_Cur_C_H`` uniform on [0, 21]
* ``Sem_GPA``, ``CUM_GPA`` uniform on [0, 5], two decimals
* ``L_STATUS`` is ``In Study`` / ``Graduated`` / ``Dismissed`` with
  probabilities 0.7 / 0.15 / 0.15; ``Catg``, ``GEN`` and ``Plan_Study`` are
  uniform over their placeholder values.
"""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, fields
from typing import Iterable, Sequence, TextIO

import numpy as np

from .dataset import Dataset, from_rows
from .exceptions import DataError

NORMAL, NEAR_RISK, IN_RISK = "Normal", "Near To Risk", "In Risk"
CLASS_VALUES = (NORMAL, NEAR_RISK, IN_RISK)

IN_STUDY, GRADUATED, DISMISSED = "In Study", "Graduated", "Dismissed"
LEARNING_STATUSES = (IN_STUDY, GRADUATED, DISMISSED)
CATEGORIES = ("A", "B")
GENDERS = ("M", "F")
STUDY_PLANS = ("old", "new", "developed")

DIFF_LIMIT = 36
REG_LOW, REG_HIGH = 137, 157

#: Table column name for each StudentRecord field, in table order.
COLUMNS = {
    "sid": "SId",
    "total_reg": "Total_Reg_C_H",
    "total_gain": "Total_Gain_C_H",
    "total_cur": "Total_Cur_C_H",
    "sem_gpa": "Sem_GPA",
    "cum_gpa": "CUM_GPA",
    "diff": "Diff_G_R_C_H",
    "catg": "Catg",
    "l_status": "L_STATUS",
    "gen": "GEN",
    "ad_status": "Ad_STATUS",
    "plan_study": "Plan_Study",
}
ELIMINATED = ("SId", "GEN", "Sem_GPA", "CUM_GPA")
CLASS_ATTR = "Ad_STATUS"


@dataclass(frozen=True)
class CourseOutcome:
    """One course on a student's record.

    ``semester`` is optional; when records carry it, the latest semester is
    taken as the current one.
    """

    course_id: str
    credit_hours: float
    grade_weight: float
    registered: bool = True
    passed: bool = True
    semester: int | None = None

    def __post_init__(self):
        if not self.credit_hours > 0:
            raise DataError(f"course {self.course_id}: credit hours must be positive")
        if not 0 <= self.grade_weight <= 5:
            raise DataError(f"course {self.course_id}: grade weight outside [0, 5]")
        if self.passed and not self.registered:
            raise DataError(f"course {self.course_id}: passed but not registered")


@dataclass(frozen=True)
class StudentRecord:
    sid: int
    total_reg: float
    total_gain: float
    total_cur: float
    sem_gpa: float
    cum_gpa: float
    diff: float
    catg: str
    l_status: str
    gen: str
    ad_status: str
    plan_study: str

    def as_row(self) -> list:
        return [getattr(self, f.name) for f in fields(self)]


class GpaBand(enum.Enum):
    BELOW_2 = "Below2"
    MID_2_TO_275 = "Mid2to275"
    ABOVE_275 = "Above275"


def credit_hour_difference(courses: Iterable[CourseOutcome]) -> float:
    """Registered credit hours minus passed ("gained") credit hours."""
    courses = list(courses)
    registered = sum(c.credit_hours for c in courses if c.registered)
    gained = sum(c.credit_hours for c in courses if c.passed)
    return float(registered - gained)


def semester_gpa(courses: Sequence[CourseOutcome]) -> float:
    """Credit-weighted mean grade weight of the given courses."""
    if not courses:
        raise DataError("semester GPA of an empty course list")
    hours = sum(c.credit_hours for c in courses)
    return float(sum(c.grade_weight * c.credit_hours for c in courses) / hours)


def gpa_band(gpa: float) -> GpaBand:
    """Below 2, 2 to 2.75 inclusive, or above 2.75 (on a 5-point scale)."""
    if not 0 <= gpa <= 5:
        raise ValueError(f"GPA {gpa} outside [0, 5]")
    if gpa < 2:
        return GpaBand.BELOW_2
    if gpa <= 2.75:
        return GpaBand.MID_2_TO_275
    return GpaBand.ABOVE_275


def planted_label(l_status: str, total_reg: float, diff: float) -> str:
    """Noise-free advisory status under the generator's rule set."""
    if l_status == DISMISSED:
        return IN_RISK
    if l_status != IN_STUDY:
        return NORMAL
    if diff <= DIFF_LIMIT:
        return NORMAL
    if total_reg <= REG_LOW or total_reg > REG_HIGH:
        return NEAR_RISK
    return NORMAL


def derived_schema_names() -> list[str]:
    return [c for c in COLUMNS.values() if c not in ELIMINATED]


def derive_student_dataset(records: Sequence[StudentRecord]) -> Dataset:
    """Table of the attributes kept for classification, class set to ``Ad_STATUS``.

    ``Diff_G_R_C_H`` is recomputed from registered minus gained hours.
    """
    if not records:
        raise DataError("no student records")
    rows = []
    for r in records:
        if r.total_gain > r.total_reg:
            raise DataError(f"student {r.sid}: gained hours exceed registered hours")
        rows.append([
            r.total_reg, r.total_gain, r.total_cur, r.total_reg - r.total_gain,
            r.catg, r.l_status, r.ad_status, r.plan_study,
        ])
    ds = from_rows(derived_schema_names(), rows, nominal_values={CLASS_ATTR: CLASS_VALUES})
    return Dataset(ds.schema, ds.instances, CLASS_ATTR)


def records_to_dataset(records: Sequence[StudentRecord]) -> Dataset:
    """All twelve table columns, class unset."""
    fixed = {CLASS_ATTR: CLASS_VALUES}
    return from_rows(list(COLUMNS.values()), [r.as_row() for r in records], fixed)


def generate_synthetic(n: int, seed: int = 0, noise_rate: float = 0.0) -> list[StudentRecord]:
    """Sample ``n`` labelled student records; see the module docstring for the rules.

    Each label is independently replaced by a uniformly chosen different
    label with probability ``noise_rate``. Features do not depend on
    ``noise_rate``, so the same seed gives the same students at every noise
    level.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= noise_rate <= 1:
        raise ValueError("noise_rate must lie in [0, 1]")
    rng = np.random.default_rng([seed, 0])
    noise = np.random.default_rng([seed, 1])

    status = rng.choice(len(LEARNING_STATUSES), size=n, p=[0.7, 0.15, 0.15])
    reg = rng.integers(12, 181, size=n)
    diff = np.array([rng.integers(0, min(r, 90) + 1) for r in reg])
    cur = rng.integers(0, 22, size=n)
    sem = np.round(rng.uniform(0, 5, size=n), 2)
    cum = np.round(rng.uniform(0, 5, size=n), 2)
    catg = rng.integers(0, len(CATEGORIES), size=n)
    gen = rng.integers(0, len(GENDERS), size=n)
    plan = rng.integers(0, len(STUDY_PLANS), size=n)

    flip = noise.random(n) < noise_rate
    shift = noise.integers(1, len(CLASS_VALUES), size=n)

    records = []
    for i in range(n):
        l_status = LEARNING_STATUSES[status[i]]
        label = planted_label(l_status, reg[i], diff[i])
        if flip[i]:
            label = CLASS_VALUES[(CLASS_VALUES.index(label) + shift[i]) % len(CLASS_VALUES)]
        records.append(StudentRecord(
            sid=i + 1,
            total_reg=int(reg[i]),
            total_gain=int(reg[i] - diff[i]),
            total_cur=int(cur[i]),
            sem_gpa=float(sem[i]),
            cum_gpa=float(cum[i]),
            diff=int(diff[i]),
            catg=CATEGORIES[catg[i]],
            l_status=l_status,
            gen=GENDERS[gen[i]],
            ad_status=label,
            plan_study=STUDY_PLANS[plan[i]],
        ))
    return records


# --------------------------------------------------------------------------
# raw course records

COURSE_COLUMNS = ("studentId", "courseId", "creditHours", "gradeWeight", "registered", "passed")
_TRUE = {"1", "true", "yes", "y", "t"}
_FALSE = {"0", "false", "no", "n", "f"}


def _parse_bool(token: str, lineno: int) -> bool:
    t = token.strip().lower()
    if t in _TRUE:
        return True
    if t in _FALSE:
        return False
    raise DataError(f"line {lineno}: {token!r} is not a boolean")


def read_course_records(stream: TextIO) -> dict[str, list[CourseOutcome]]:
    """Parse course-record CSV into courses grouped by student, in file order.

    Required columns are ``studentId, courseId, creditHours, gradeWeight,
    registered, passed``; an extra ``semester`` column is used if present.
    """
    reader = csv.DictReader(stream, skipinitialspace=True)
    if reader.fieldnames is None:
        raise DataError("empty course-record stream")
    missing = [c for c in COURSE_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise DataError(f"course records lack columns {missing}")
    has_semester = "semester" in reader.fieldnames
    out: dict[str, list[CourseOutcome]] = {}
    for lineno, row in enumerate(reader, start=2):
        if None in row or any(row[c] is None for c in COURSE_COLUMNS):
            raise DataError(f"line {lineno}: wrong number of cells")
        try:
            course = CourseOutcome(
                course_id=row["courseId"].strip(),
                credit_hours=float(row["creditHours"]),
                grade_weight=float(row["gradeWeight"]),
                registered=_parse_bool(row["registered"], lineno),
                passed=_parse_bool(row["passed"], lineno),
                semester=int(row["semester"]) if has_semester and row["semester"].strip() else None,
            )
        except ValueError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
        out.setdefault(row["studentId"].strip(), []).append(course)
    return out


FEATURE_COLUMNS = (
    "SId", "Total_Reg_C_H", "Total_Gain_C_H", "Total_Cur_C_H",
    "Sem_GPA", "CUM_GPA", "Diff_G_R_C_H", "GPA_Band",
)


def student_features(courses: Sequence[CourseOutcome]) -> dict[str, float | str]:
    """Credit-hour totals and GPAs of one student's courses."""
    registered = sum(c.credit_hours for c in courses if c.registered)
    gained = sum(c.credit_hours for c in courses if c.passed)
    semesters = [c.semester for c in courses if c.semester is not None]
    if semesters:
        last = max(semesters)
        current = [c for c in courses if c.semester == last]
    else:
        current = list(courses)
    cum = semester_gpa(courses)
    return {
        "Total_Reg_C_H": registered,
        "Total_Gain_C_H": gained,
        "Total_Cur_C_H": sum(c.credit_hours for c in current if c.registered),
        "Sem_GPA": semester_gpa(current),
        "CUM_GPA": cum,
        "Diff_G_R_C_H": credit_hour_difference(courses),
        "GPA_Band": gpa_band(cum).value,
    }


def features_dataset(by_student: dict[str, list[CourseOutcome]]) -> Dataset:
    rows = []
    for sid, courses in by_student.items():
        feats = student_features(courses)
        rows.append([sid] + [feats[c] for c in FEATURE_COLUMNS[1:]])
    if not rows:
        raise DataError("no course records")
    # student ids stay nominal even when they look numeric
    ids = list(dict.fromkeys(str(r[0]) for r in rows))
    return from_rows(FEATURE_COLUMNS, rows, nominal_values={"SId": ids})
