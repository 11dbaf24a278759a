from datetime import datetime

from reportlab.lib import colors
from reportlab.lib.pagesizes import landscape, letter
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import inch
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from holewidth.decomposition.properties import PropertyReport

_STATUS_COLOURS = {"fail": colors.mistyrose, "pass": colors.honeydew, "vacuous": colors.white}


def generate_property_report(report: PropertyReport, output_path: str, title: str = "Property report") -> str:
    """Generate a PDF table of a property report."""
    doc = SimpleDocTemplate(output_path, pagesize=landscape(letter))
    styles = getSampleStyleSheet()
    cell = ParagraphStyle("Cell", parent=styles["Normal"], fontSize=8, leading=10)
    elements = []

    title_style = ParagraphStyle("CustomTitle", parent=styles["Heading1"], fontSize=20, spaceAfter=20)
    elements.append(Paragraph(title, title_style))
    elements.append(Paragraph(f"Generated on: {datetime.now().strftime('%Y-%m-%d %H:%M')}", styles["Normal"]))
    elements.append(Spacer(1, 12))

    failures = len(report.failures)
    verdict = "all properties hold" if report.ok else f"{failures} failing"
    elements.append(Paragraph(f"C{report.hole_length} table: {len(report.results)} properties, {verdict}", styles["Heading2"]))

    frame = report.to_frame()
    rows = [list(frame.columns)]
    for record in frame.itertuples(index=False):
        rows.append([record.Name, Paragraph(record.Property, cell), record.Status, record.Witness, record.Pattern])

    t = Table(rows, colWidths=[0.9 * inch, 5.4 * inch, 0.8 * inch, 1.4 * inch, 1.0 * inch], repeatRows=1)
    style = [
        ("BACKGROUND", (0, 0), (-1, 0), colors.grey),
        ("TEXTCOLOR", (0, 0), (-1, 0), colors.whitesmoke),
        ("FONTNAME", (0, 0), (-1, 0), "Helvetica-Bold"),
        ("FONTSIZE", (0, 0), (-1, 0), 10),
        ("BOTTOMPADDING", (0, 0), (-1, 0), 8),
        ("FONTNAME", (0, 1), (-1, -1), "Helvetica"),
        ("FONTSIZE", (0, 1), (-1, -1), 8),
        ("VALIGN", (0, 0), (-1, -1), "TOP"),
        ("GRID", (0, 0), (-1, -1), 0.5, colors.black),
    ]
    for row, status in enumerate(frame["Status"], start=1):
        style.append(("BACKGROUND", (0, row), (-1, row), _STATUS_COLOURS.get(status, colors.white)))
    t.setStyle(TableStyle(style))
    elements.append(t)
    elements.append(Spacer(1, 16))

    elements.append(Paragraph("Notes:", styles["Heading2"]))
    notes = [
        "1. A property fails when some rotation of the hole violates it; the witness lists the offending vertices.",
        "2. Vacuous means no rotation had the sets the property talks about.",
        "3. Only sets that survived the small-set reduction are checked.",
    ]
    for note in notes:
        elements.append(Paragraph(note, styles["Normal"]))
        elements.append(Spacer(1, 6))

    doc.build(elements)
    return output_path
