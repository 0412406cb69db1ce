import { describe, expect, it } from "vitest";
import {
  escapeHtml,
  formatDisplay,
  formatTau,
  formatUtilityCell,
} from "../src/format";
import type { UtilityRow } from "../src/types";
import imdbTau500 from "./fixtures/imdb_tau500.json";

describe("formatDisplay", () => {
  it("pads service-rounded values to two decimals without re-rounding", () => {
    expect(formatDisplay(4.66)).toBe("4.66");
    expect(formatDisplay(0.1)).toBe("0.10");
    expect(formatDisplay(0)).toBe("0.00");
    expect(formatDisplay(16.34)).toBe("16.34");
  });

  it("agrees with the service on every fixture value", () => {
    // display_value arrives already rounded; formatting must not change it
    for (const row of (imdbTau500 as { utilities: UtilityRow[] }).utilities) {
      const formatted = formatDisplay(row.display_value);
      expect(Number(formatted)).toBe(row.display_value);
    }
  });
});

describe("formatUtilityCell", () => {
  it("matches the value-then-parenthesized-rank cell format", () => {
    const row = { display_value: 4.66, rank: 1 } as UtilityRow;
    expect(formatUtilityCell(row)).toBe("4.66 (1)");
  });
});

describe("formatTau", () => {
  it("prints detents as integers and free values to one decimal", () => {
    expect(formatTau(500)).toBe("500 ms");
    expect(formatTau(483.7)).toBe("483.7 ms");
  });
});

describe("escapeHtml", () => {
  it("neutralizes markup metacharacters", () => {
    expect(escapeHtml(`<b a="c">&`)).toBe("&lt;b a=&quot;c&quot;&gt;&amp;");
  });
});
