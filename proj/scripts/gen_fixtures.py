#!/usr/bin/env python3
"""Regenerates the generated fixtures under tests/fixtures.

    corpus/ii1a.xml          111 sung notes, 75 syllables, a 6-note melisma on "da"
    corpus/variant_{a,b,c}   three small variants with fixed head-note band counts
    corpus/manifest.json     file name -> variant id
    mxl/single_note.mxl      parser/single_note.xml in a compressed container

Head-note band cells are fixed per file; everything else (order, pitches
inside a band, syllable text) comes from a seeded RNG so reruns are
byte-identical.
"""

import json
import random
import zipfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
DIVISIONS = 2
MEASURE = Fraction(4)

PITCHES = {
    "low": [53, 55, 57, 59],
    "mid": [60, 62, 64, 65, 67, 69, 71],
    "high": [72, 74, 76, 77],
}
DURATIONS = {
    "short": [Fraction(1, 2)],
    "medium": [Fraction(1)],
    "long": [Fraction(3, 2), Fraction(2), Fraction(3)],
}
SYLLABLES = ("del la mia sor te a ma ra la gne rò che_io pian go il mio do lo re "
             "non ho pa ce nel cor ti ran no se ren fi e ro").split()
SPELLING = [("C", 0), ("D", -1), ("D", 0), ("E", -1), ("E", 0), ("F", 0),
            ("G", -1), ("G", 0), ("A", -1), ("A", 0), ("B", -1), ("B", 0)]


def pitch_xml(midi):
    step, alter = SPELLING[midi % 12]
    octave = midi // 12 - 1
    alter_xml = f"<alter>{alter}</alter>" if alter else ""
    return f"<pitch><step>{step}</step>{alter_xml}<octave>{octave}</octave></pitch>"


def note_xml(midi, duration, lyric=None):
    ticks = int(duration * DIVISIONS)
    lines = ["      <note>"]
    lines.append(f"        {pitch_xml(midi)}" if midi is not None else "        <rest/>")
    lines.append(f"        <duration>{ticks}</duration>")
    lines.append("        <voice>1</voice>")
    if lyric is not None:
        text = lyric.replace("_", "")
        lines.append(f"        <lyric number=\"1\"><syllabic>single</syllabic><text>{text}</text></lyric>")
    lines.append("      </note>")
    return "\n".join(lines)


def pack_measures(events):
    """Fills 4/4 measures in order, padding with rests where a note would cross the bar."""
    measures, current, used = [], [], Fraction(0)
    for midi, duration, lyric in events:
        if used + duration > MEASURE:
            current.append(note_xml(None, MEASURE - used))
            measures.append(current)
            current, used = [], Fraction(0)
        current.append(note_xml(midi, duration, lyric))
        used += duration
    if used < MEASURE:
        current.append(note_xml(None, MEASURE - used))
    measures.append(current)
    return measures


def voice_events(rng, cells, extensions, melisma_at=None, melisma_len=6):
    heads = [cell for cell, count in cells.items() for _ in range(count)]
    rng.shuffle(heads)
    m = len(heads)
    ext = [0] * m
    if melisma_at is not None:
        ext[melisma_at] = melisma_len - 1
    slots = [i for i in range(m) if i != melisma_at]
    for i in rng.sample(slots, extensions):
        ext[i] = 1
    events = []
    for i, (pband, dband) in enumerate(heads):
        midi = rng.choice(PITCHES[pband])
        text = "da" if i == melisma_at else SYLLABLES[i % len(SYLLABLES)]
        events.append((midi, rng.choice(DURATIONS[dband]), text))
        for j in range(ext[i]):
            step = (2, -1, 2, -2, 1)[j % 5]
            midi = min(max(midi + step, 60), 71)
            events.append((midi, Fraction(1, 2), None))
    return events


def score_xml(title, events):
    voice = pack_measures(events)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<score-partwise version="3.1">',
           f"  <work><work-title>{title}</work-title></work>",
           "  <part-list>",
           '    <score-part id="P1"><part-name>Canto</part-name></score-part>',
           '    <score-part id="P2"><part-name>Pianoforte</part-name></score-part>',
           "  </part-list>",
           '  <part id="P1">']
    attributes = ("      <attributes><divisions>2</divisions>"
                  "<time><beats>4</beats><beat-type>4</beat-type></time></attributes>")
    for index, body in enumerate(voice, start=1):
        out.append(f'    <measure number="{index}">')
        if index == 1:
            out.append(attributes)
        out.extend(body)
        out.append("    </measure>")
    out.append("  </part>")
    out.append('  <part id="P2">')
    for index in range(1, len(voice) + 1):
        out.append(f'    <measure number="{index}">')
        if index == 1:
            out.append(attributes)
        root = (48, 53, 55, 48)[index % 4]
        out.append(note_xml(root, MEASURE))
        chord = note_xml(root + 7, MEASURE).replace("      <note>\n", "      <note>\n        <chord/>\n")
        out.append(chord)
        out.append("    </measure>")
    out.append("  </part>")
    out.append("</score-partwise>")
    return "\n".join(out) + "\n"


def write_variant(path, title, seed, cells, extensions, melisma_at=None):
    rng = random.Random(seed)
    events = voice_events(rng, cells, extensions, melisma_at)
    path.write_text(score_xml(title, events), encoding="utf-8")


def write_mxl():
    target = ROOT / "mxl" / "single_note.mxl"
    target.parent.mkdir(parents=True, exist_ok=True)
    container = ('<?xml version="1.0" encoding="UTF-8"?>\n<container>\n  <rootfiles>\n'
                 '    <rootfile full-path="score.xml" media-type="application/vnd.recordare.musicxml+xml"/>\n'
                 "  </rootfiles>\n</container>\n")
    score = (ROOT / "parser" / "single_note.xml").read_bytes()
    with zipfile.ZipFile(target, "w") as archive:
        fixed = (2020, 1, 1, 0, 0, 0)
        archive.writestr(zipfile.ZipInfo("mimetype", fixed), "application/vnd.recordare.musicxml",
                         compress_type=zipfile.ZIP_STORED)
        archive.writestr(zipfile.ZipInfo("META-INF/container.xml", fixed), container,
                         compress_type=zipfile.ZIP_DEFLATED)
        archive.writestr(zipfile.ZipInfo("score.xml", fixed), score, compress_type=zipfile.ZIP_DEFLATED)


def main():
    corpus = ROOT / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)
    write_variant(corpus / "ii1a.xml", "Synthetic variant II.1A", 11,
                  {("mid", "short"): 30, ("mid", "medium"): 25, ("high", "short"): 3,
                   ("high", "medium"): 7, ("high", "long"): 3, ("mid", "long"): 5,
                   ("low", "short"): 2},
                  extensions=31, melisma_at=40)
    write_variant(corpus / "variant_a.xml", "Variant A", 21,
                  {("mid", "short"): 31, ("mid", "medium"): 25, ("high", "short"): 4,
                   ("low", "medium"): 2},
                  extensions=10)
    write_variant(corpus / "variant_b.xml", "Variant B", 22,
                  {("mid", "short"): 24, ("high", "short"): 14, ("mid", "medium"): 6,
                   ("high", "medium"): 3},
                  extensions=8)
    write_variant(corpus / "variant_c.xml", "Variant C", 23,
                  {("mid", "short"): 58, ("high", "short"): 20, ("mid", "medium"): 3,
                   ("high", "long"): 2},
                  extensions=12)
    manifest = {"ii1a.xml": "II.1A", "variant_a.xml": "A", "variant_b.xml": "B", "variant_c.xml": "C"}
    (corpus / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    write_mxl()


if __name__ == "__main__":
    main()
