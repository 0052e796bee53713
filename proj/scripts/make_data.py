#!/usr/bin/env python3
"""Regenerate the bundled XML corpora under data/.

data/corpus/    small retrieval corpus used by the examples, the fixture run
                and the scoring checks
data/training/  tables whose headers carry units, mined for quantity
                classifier training pairs
"""
from pathlib import Path
from xml.sax.saxutils import escape

ROOT = Path(__file__).resolve().parent.parent


def table_xml(tid, title, abstract, caption, sentences, footnotes, col_headers, rows):
    out = [f'  <table id="{tid}">']
    out.append(f"    <article-title>{escape(title)}</article-title>")
    out.append(f"    <abstract>{escape(abstract)}</abstract>")
    out.append(f"    <caption>{escape(caption)}</caption>")
    out.append("    <referring-sentences>")
    out += [f"      <sentence>{escape(s)}</sentence>" for s in sentences]
    out.append("    </referring-sentences>")
    out.append("    <footnotes>")
    out += [f"      <footnote>{escape(s)}</footnote>" for s in footnotes]
    out.append("    </footnotes>")
    out.append("    <column-headers>")
    out += [f"      <column-header>{escape(s)}</column-header>" for s in col_headers]
    out.append("    </column-headers>")
    out.append("    <row-headers>")
    out += [f"      <row-header>{escape(r[0])}</row-header>" for r in rows]
    out.append("    </row-headers>")
    out.append("    <cell-values>")
    for r in rows:
        out += [f"      <cell-value>{escape(c)}</cell-value>" for c in r[1:]]
    out.append("    </cell-values>")
    out.append("  </table>")
    return "\n".join(out)


def write_doc(path, doc_id, tables):
    body = "\n".join(table_xml(**t) for t in tables)
    path.write_text(f'<?xml version="1.0" encoding="UTF-8"?>\n<document id="{doc_id}">\n{body}\n</document>\n',
                    encoding="utf-8")


CORPUS = {
    "gr-bimetric": [
        dict(tid="gr-bimetric-t1",
             title="Newtonian gravity versus bimetric gravity on galactic scales",
             abstract="We compare gravitational forces predicted by newtonian gravity and by bimetric gravity for rotating disks.",
             caption="Gravitational force and acceleration at selected radii for newtonian gravity and bimetric gravity.",
             sentences=["Table 1 lists the gravitational force in both theories.",
                        "Bimetric gravity enhances the force beyond 10 kpc."],
             footnotes=["Forces normalized to a test mass of 1 kg."],
             col_headers=["Radius (kpc)", "Newtonian force (N)", "Bimetric force (N)", "Acceleration (m/s^2)"],
             rows=[["R1", "2.0", "1.2e-10", "1.3e-10", "1.2e-10"],
                   ["R2", "5.0", "4.1e-11", "5.0e-11", "4.1e-11"],
                   ["R3", "10.0", "9.8e-12", "1.6e-11", "9.8e-12"]]),
        dict(tid="gr-bimetric-t2",
             title="Newtonian gravity versus bimetric gravity on galactic scales",
             abstract="We compare gravitational forces predicted by newtonian gravity and by bimetric gravity for rotating disks.",
             caption="Theories of gravity considered in this work.",
             sentences=["The theories differ in their treatment of the second metric."],
             footnotes=["See text for references."],
             col_headers=["Theory", "Metric", "Comment"],
             rows=[["Newtonian gravity", "single", "flat", "baseline"],
                   ["Bimetric gravity", "two", "interacting", "massive graviton"],
                   ["MOND", "single", "modified", "phenomenological"]]),
    ],
    "planets-gravity": [
        dict(tid="planets-gravity-t1",
             title="Surface gravity of solar system bodies",
             abstract="Surface gravity and escape velocity of planets and moons from spacecraft tracking.",
             caption="Surface gravity, radius and mass of the planets.",
             sentences=["The surface gravity of Jupiter exceeds that of Earth by a factor 2.5."],
             footnotes=["Equatorial values."],
             col_headers=["Planet", "Surface gravity (m/s^2)", "Radius (km)", "Mass (kg)"],
             rows=[["Mercury", "3.7", "2440", "3.30e23"],
                   ["Earth", "9.81", "6371", "5.97e24"],
                   ["Jupiter", "24.79", "69911", "1.90e27"]]),
        dict(tid="planets-gravity-t2",
             title="Earth-like planets in the habitable zone",
             abstract="A catalogue of earth-like planet candidates discovered by transit surveys.",
             caption="Earth-like planet candidates and host stars.",
             sentences=["Three earth-like planet candidates orbit M dwarfs."],
             footnotes=["Candidates not yet confirmed."],
             col_headers=["Name", "Host", "Status"],
             rows=[["K-186f", "M1V", "confirmed"],
                   ["K-452b", "G2V", "candidate"],
                   ["T-1e", "M8V", "confirmed"]]),
    ],
    "agn-xray": [
        dict(tid="agn-xray-t1",
             title="X-ray emission spectra of Seyfert galaxies",
             abstract="We fit the x-ray emission spectra of twenty Seyfert galaxies with reflection models.",
             caption="Best-fit parameters of the x-ray emission spectra.",
             sentences=["The iron line energy is consistent with neutral iron."],
             footnotes=["Errors at 90 per cent confidence."],
             col_headers=["Source", "Iron line width (keV)", "Line energy (keV)", "Photon index"],
             rows=[["NGC 1", "0.16 ± 0.01", "6.40", "1.9"],
                   ["NGC 2", "0.21 ± 0.03", "6.38", "2.1"],
                   ["NGC 3", "0.12 ± 0.02", "6.41", "1.7"]]),
        dict(tid="agn-xray-t2",
             title="X-ray luminosity of nearby active galaxies",
             abstract="Hard x-ray luminosity and emission measured by a survey of nearby AGN.",
             caption="X-ray luminosity in the 2-10 keV band.",
             sentences=["The x-ray emission is dominated by the nucleus."],
             footnotes=["Luminosities corrected for absorption."],
             col_headers=["Source", "Luminosity (erg/s)", "Distance (Mpc)"],
             rows=[["NGC 1", "1.2e42", "15"],
                   ["NGC 4", "3.4e41", "22"],
                   ["NGC 5", "8.8e42", "41"]]),
        dict(tid="agn-xray-t3",
             title="Optical emission spectra of star forming regions",
             abstract="Optical emission line spectra and metallicity of HII regions.",
             caption="Emission line fluxes relative to H beta.",
             sentences=["Emission spectra show strong oxygen lines."],
             footnotes=["Fluxes dereddened."],
             col_headers=["Line", "Wavelength (nm)", "Flux"],
             rows=[["[OIII]", "500.7", "3.2"],
                   ["H alpha", "656.3", "2.9"],
                   ["[NII]", "658.4", "0.8"]]),
    ],
    "materials": [
        dict(tid="materials-t1",
             title="Electrical conductivity of doped oxides",
             abstract="We report the electrical conductivity of several materials at different temperatures.",
             caption="Electrical conductivity of materials at different temperatures.",
             sentences=["Conductivity increases with temperature for all samples."],
             footnotes=["Measured with a four-probe setup."],
             col_headers=["Material", "Temperature (K)", "Conductivity (S/cm)"],
             rows=[["ZnO:Al", "300", "1.2e3"],
                   ["ZnO:Ga", "400", "2.5e3"],
                   ["SnO2:F", "500", "3.1e3"]]),
        dict(tid="materials-t2",
             title="Thermal conductivity of alloys",
             abstract="Thermal conductivity of metallic alloys at room temperature.",
             caption="Thermal conductivity of selected alloys.",
             sentences=["Thermal transport is dominated by electrons."],
             footnotes=["Room temperature values."],
             col_headers=["Alloy", "Thermal conductivity (W/mK)"],
             rows=[["Al 6061", "167"],
                   ["Ti-6Al-4V", "6.7"],
                   ["Inconel", "11.4"]]),
        dict(tid="materials-t3",
             title="Electrical properties of polymer electrolytes",
             abstract="Ionic and electrical conductivity of polymer electrolytes for batteries.",
             caption="Materials studied and their preparation route.",
             sentences=["All materials were annealed before measurement."],
             footnotes=["PEO: polyethylene oxide."],
             col_headers=["Material", "Route", "Supplier"],
             rows=[["PEO-LiTFSI", "casting", "lab"],
                   ["PVDF-HFP", "spin coating", "commercial"],
                   ["PAN", "electrospinning", "lab"]]),
    ],
    "mesons": [
        dict(tid="mesons-t1",
             title="Lattice determination of light meson masses",
             abstract="We compute meson masses and decay constants in lattice QCD.",
             caption="Meson mass and decay constant.",
             sentences=["The meson mass agrees with experiment within errors."],
             footnotes=["Statistical errors only."],
             col_headers=["Meson", "Mass (MeV/c^2)", "Decay constant (MeV)"],
             rows=[["pion", "139.6", "130.4"],
                   ["kaon", "493.7", "155.7"],
                   ["eta", "547.9", "-"]]),
        dict(tid="mesons-t2",
             title="Stellar mass function of nearby galaxies",
             abstract="Stellar mass, halo mass and dynamical mass of galaxies; the mass function and mass to light ratio.",
             caption="Mass, mass, mass: stellar mass, halo mass and total mass estimates.",
             sentences=["The mass estimates are consistent, mass for mass."],
             footnotes=["Mass in solar units."],
             col_headers=["Galaxy", "Stellar mass", "Halo mass", "Total mass"],
             rows=[["G1", "mass 1", "mass 2", "mass 3"],
                   ["G2", "mass 4", "mass 5", "mass 6"]]),
    ],
    "misc": [
        dict(tid="misc-t1",
             title="Velocity dispersion of galaxy clusters",
             abstract="Velocity dispersion and dynamical masses of galaxy clusters from spectroscopy.",
             caption="Velocity dispersion of galaxy clusters.",
             sentences=["Velocities measured from member galaxies."],
             footnotes=["Clipped at 3 sigma."],
             col_headers=["Cluster", "Dispersion (km/s)", "Redshift"],
             rows=[["A1", "850", "0.05"],
                   ["A2", "1020", "0.08"],
                   ["A3", "640", "0.03"]]),
        dict(tid="misc-t2",
             title="Neutron star radius constraints",
             abstract="Radius and mass of neutron stars from x-ray bursts.",
             caption="Neutron star radius and mass constraints.",
             sentences=["Radii cluster near 12 km."],
             footnotes=["From burst spectra."],
             col_headers=["Source", "Radius (km)", "Mass (M_sun)"],
             rows=[["4U 1", "11.9", "1.4"],
                   ["4U 2", "12.3", "1.6"]]),
        dict(tid="misc-t3",
             title="Survey programs of the observatory",
             abstract="Overview of survey programs and observing modes.",
             caption="Survey programs and observing modes.",
             sentences=["Programs are listed by cycle."],
             footnotes=["PI: principal investigator."],
             col_headers=["Program", "Mode", "PI"],
             rows=[["Deep field", "imaging", "Smith"],
                   ["Wide survey", "spectroscopy", "Jones"]]),
        dict(tid="misc-t4",
             title="Lifetimes of excited nuclear states",
             abstract="Lifetimes and decay energies of excited states measured by Doppler shift.",
             caption="Lifetimes and decay energies.",
             sentences=["Lifetimes agree with shell model predictions."],
             footnotes=["Uncertainties include systematics."],
             col_headers=["State", "Energy (keV)", "Lifetime (ns)"],
             rows=[["2+", "1332", "0.7"],
                   ["4+", "2505", "1.1"]]),
    ],
}


TRAINING_PHRASES = {
    "Length": (["distance", "radius", "diameter", "width", "wavelength", "thickness", "separation", "core radius"],
               ["pc", "km", "cm", "nm", "kpc", "m"]),
    "Mass": (["mass", "stellar mass", "meson mass", "halo mass", "black hole mass", "rest mass"],
             ["kg", "M_sun", "MeV/c^2", "g", "GeV/c^2"]),
    "Time": (["period", "age", "lifetime", "half-life", "decay time", "orbital period", "delay"],
             ["s", "yr", "Gyr", "ms", "Myr"]),
    "Temperature": (["temperature", "effective temperature", "gas temperature", "critical temperature",
                     "melting point", "dust temperature"],
                    ["K", "mK", "°C"]),
    "Energy": (["energy", "line energy", "binding energy", "photon energy", "x-ray emission", "iron line width",
                "excitation energy", "emission line energy"],
               ["keV", "eV", "MeV", "erg", "J"]),
    "Force": (["force", "gravitational force", "tension", "friction force", "thrust", "drag force", "tidal force"],
              ["N", "kN", "dyn", "lbf"]),
    "Acceleration": (["acceleration", "surface gravity", "gravitational acceleration", "gravity",
                      "centripetal acceleration", "radial acceleration"],
                     ["m/s^2", "cm/s^2", "km/s^2"]),
    "Velocity": (["velocity", "rotation velocity", "radial velocity", "velocity dispersion", "speed",
                  "outflow speed"],
                 ["km/s", "m/s", "cm/s"]),
    "Pressure": (["pressure", "gas pressure", "vapor pressure", "stress", "bulk modulus"],
                 ["Pa", "kPa", "GPa", "bar", "atm"]),
    "Power": (["luminosity", "power", "x-ray luminosity", "radiated power", "bolometric luminosity"],
              ["erg/s", "W", "kW", "MW"]),
    "Frequency": (["frequency", "oscillation frequency", "observing frequency", "clock rate",
                   "resonance frequency"],
                  ["Hz", "kHz", "MHz", "GHz"]),
    "ElectricalConductivity": (["electrical conductivity", "conductivity", "ionic conductivity",
                                "sheet conductivity", "film conductivity"],
                               ["S/cm", "S/m", "mS/cm"]),
    "Density": (["density", "bulk density", "mass density", "gas density", "fluid density"],
                ["g/cm^3", "kg/m^3"]),
    "Voltage": (["voltage", "bias voltage", "breakdown voltage", "threshold voltage", "open-circuit voltage"],
                ["V", "mV", "kV"]),
}

UNUSED_WORDS = ["sample", "object", "source", "name", "type", "class", "model", "catalog", "galaxy", "star",
                "comparison", "method", "survey", "flag", "notes", "planet", "versus"]


def training_tables():
    tables = []
    number = 0
    for qtype, (phrases, units) in TRAINING_PHRASES.items():
        for i, phrase in enumerate(phrases):
            unit = units[i % len(units)]
            alt = units[(i + 1) % len(units)]
            number += 1
            cap = phrase[0].upper() + phrase[1:]
            tables.append(dict(
                tid=f"train-{number:03d}",
                title=f"Measurements of {phrase} in a sample",
                abstract=f"We report the {phrase} of each {UNUSED_WORDS[number % len(UNUSED_WORDS)]}.",
                caption=f"Catalog of {phrase} values; {phrase} in {unit}.",
                sentences=[f"The {phrase} was derived for every {UNUSED_WORDS[(number + 3) % len(UNUSED_WORDS)]}."],
                footnotes=[f"{cap} [{alt}] from the literature."],
                col_headers=["Name", f"{cap} ({unit})", f"{cap} error ({unit})", "Type"],
                rows=[[f"S{k}", f"{k}.5", f"0.{k}", UNUSED_WORDS[(number + k) % len(UNUSED_WORDS)]]
                      for k in range(1, 4)]))
    tables.append(dict(
        tid="train-neg-001",
        title="Sample comparison versus earlier catalogs",
        abstract="Comparison of our sample versus the literature, with notes on each earth-like planet candidate.",
        caption="Names, types and flags of the sample.",
        sentences=["Objects are classified by type and flag in Table 2."],
        footnotes=["Flag A: reliable; flag B: marginal."],
        col_headers=["Name", "Type", "Flag", "Class"],
        rows=[["P1", "planet", "A", "rocky"], ["P2", "star", "B", "dwarf"]]))
    return tables


def main():
    corpus_dir = ROOT / "data" / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    for doc_id, tables in CORPUS.items():
        write_doc(corpus_dir / f"{doc_id}.xml", doc_id, tables)
    training_dir = ROOT / "data" / "training"
    training_dir.mkdir(parents=True, exist_ok=True)
    write_doc(training_dir / "unit-tables.xml", "unit-tables", training_tables())


if __name__ == "__main__":
    main()
