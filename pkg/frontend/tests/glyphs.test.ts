import { describe, expect, it } from "vitest";

import {
  moonPath,
  rectangleAngleDeg,
  rectanglePath,
  starInnerRadius,
  starMorphPath,
} from "../src/glyphs.js";

describe("rectangle glyph", () => {
  it("maps u to a rotation within [0, 180)", () => {
    expect(rectangleAngleDeg(0)).toBe(0);
    expect(rectangleAngleDeg(0.5)).toBe(90);
    expect(rectangleAngleDeg(0.25)).toBeCloseTo(45, 12);
    expect(rectangleAngleDeg(0.999)).toBeLessThan(180);
  });

  it("wraps cyclically", () => {
    expect(rectangleAngleDeg(1)).toBe(0);
    expect(rectangleAngleDeg(1.25)).toBeCloseTo(45, 12);
  });

  it("draws a wider-than-tall bar around the origin", () => {
    expect(rectanglePath(6)).toBe("M -6.000 -2.280 H 6.000 V 2.280 H -6.000 Z");
  });
});

describe("moon glyph", () => {
  it("is cyclic: u=0 and u->1 produce the same path", () => {
    expect(moonPath(0, 5)).toBe(moonPath(0.9999999999, 5));
  });

  it("quarter phases collapse the terminator to a straight edge", () => {
    // cos(pi/2) ~ 0 so the terminator ellipse is flat at u=0.25.
    expect(moonPath(0.25, 5)).toContain("A 0.000 5.000");
    expect(moonPath(0.75, 5)).toContain("A 0.000 5.000");
  });

  it("flips the terminator sweep between waxing and waning", () => {
    const waxing = moonPath(0.1, 5);
    const waning = moonPath(0.6, 5);
    expect(waxing).not.toBe(waning);
    expect(waxing.endsWith("0 0 0 -5.000 Z")).toBe(true);
    expect(waning.endsWith("1 0 -5.000 Z")).toBe(true);
  });
});

describe("star morph glyph", () => {
  it("grows the inner radius from spiky star toward a circle", () => {
    expect(starInnerRadius(0, 10)).toBeCloseTo(4.2, 12);
    expect(starInnerRadius(1, 10)).toBeCloseTo(10, 12);
    expect(starInnerRadius(0.5, 10)).toBeGreaterThan(starInnerRadius(0.2, 10));
  });

  it("is acyclic by design: u=0 and u->1 differ", () => {
    expect(starMorphPath(0, 10)).not.toBe(starMorphPath(0.999999, 10));
  });

  it("emits one outer and one inner vertex per point", () => {
    const path = starMorphPath(0, 10, 5);
    const vertices = path.match(/[ML] /g);
    expect(vertices).toHaveLength(10);
    expect(path.endsWith("Z")).toBe(true);
  });
});
