"""Table generation for terminal output of values, counts and zero lists."""
from rich.table import Table

from .export import fmt


def summary_box(rows, compact: bool = False) -> str:
    """Key/value rows framed in box-drawing characters; non-string values go through ``fmt``.

    ``compact`` drops the divider between the key and value columns.
    """
    cells = [(str(key), value if isinstance(value, str) else fmt(value)) for key, value in rows]
    key_width = max(len(key) for key, _ in cells)
    value_width = max(len(value) for _, value in cells)
    if compact:
        rule = "─" * (key_width + value_width + 4)
        body = [f"│ {key.ljust(key_width)}  {value.ljust(value_width)} │" for key, value in cells]
        return "\n".join([f"┌{rule}┐", *body, f"└{rule}┘"])
    left, right = "─" * (key_width + 2), "─" * (value_width + 2)
    body = [f"│ {key.ljust(key_width)} │ {value.ljust(value_width)} │" for key, value in cells]
    return "\n".join([f"┌{left}┬{right}┐", *body, f"└{left}┴{right}┘"])


def complex_text(z: complex) -> str:
    return f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}i"


def count_table(report) -> Table:
    """Summary of a CountReport."""
    table = Table(title=f"Counts for {report.family}")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="magenta")
    table.add_column("Status", style="green")

    table.add_row("N(T)", str(report.N), "")
    table.add_row("N₀(T)", str(report.N0), "")
    table.add_row("N₀′(T)", str(report.N0_prime), "✓ all on line" if report.all_on_line else "")
    table.add_row("N − N₀", str(report.N - report.N0), "✓ even" if report.parity_ok else "✗ odd")
    if report.B_a is not None:
        table.add_row("B_a", str(report.B_a), "✓ holds" if report.bound_ok else "✗ violated")
        table.add_row("B_a − d_lower", str(report.reduced_bound), "")
    else:
        table.add_row("B_a", "N/A", "strip count" if report.strip_sigma0 is not None else "")
    table.add_row("k / d / d_lower", f"{report.k} / {report.d_estimate} / {report.d_lower}",
                  "" if report.d_stable else "d not settled")
    table.add_row("σ₀", fmt(report.sigma0), "strip" if report.strip_sigma0 is not None else "")
    table.add_row("height", fmt(report.height), f"{report.perturbations} perturbation(s)")
    return table


def zeros_table(records, title="Zeros") -> Table:
    table = Table(title=title)
    table.add_column("Location", style="cyan")
    table.add_column("Multiplicity", style="magenta")
    table.add_column("On line", style="green")
    table.add_column("Residual", style="blue")
    for record in records:
        table.add_row(complex_text(record.location), str(record.multiplicity),
                      "✓" if record.on_line else "✗", f"{record.residual:.2e}")
    return table


def corpus_table(stable_checks, unstable_checks) -> Table:
    table = Table(title="Polynomial corpus")
    table.add_column("Corpus", style="cyan")
    table.add_column("Polynomials", style="magenta")
    table.add_column("Pass all necessary conditions", style="green")
    table.add_column("Fail one or more", style="blue")
    for name, checks in (("stable", stable_checks), ("unstable", unstable_checks)):
        passing = sum(1 for c in checks if c.necessary_conditions)
        table.add_row(name, str(len(checks)), str(passing), str(len(checks) - passing))
    return table
