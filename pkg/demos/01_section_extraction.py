"""Extract the two target sections from a discharge-summary note.

The extractor finds the "Brief Hospital Course" and "Discharge
Instructions" sections, returns their bodies, and hands back the rest of
the note with both sections removed.
"""

from dischargekit import extract_targets

NOTE = """\
Service: MEDICINE
Chief Complaint:
Shortness of breath for two days.
History of Present Illness:
The patient arrived with mild fever and a productive cough.
Brief Hospital Course:
The patient was treated with fluids and rest and improved each day.
Oxygen was weaned by day two and vitals stayed stable.
Discharge Medications:
Listed separately.
Discharge Instructions:
Rest at home, drink plenty of water, and call the office if fever returns.
Followup Instructions:
Clinic visit in one week.
"""

targets, body = extract_targets(NOTE)

print("Brief Hospital Course:")
print(" ", targets.bhc.replace("\n", "\n  "))
print("Discharge Instructions:")
print(" ", targets.di.replace("\n", "\n  "))
print()
print("Body with both targets removed:")
print(body)

# Extraction is idempotent: nothing left to extract from the body.
again, _ = extract_targets(body)
assert again.bhc == "" and again.di == ""
