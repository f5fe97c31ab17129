/**
 * Bar geometry for the 8/7/6 identical-base histogram panel.
 *
 * Pure layout math: given counts and a plot area, produce pixel rectangles
 * plus axis labels so the canvas drawing code stays trivial.
 */

import type { Histogram } from "./types.js";

export interface Bar {
  label: string;
  count: number;
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface ChartLayout {
  bars: Bar[];
  maxCount: number;
}

export function histogramBars(
  histogram: Histogram,
  plotWidth: number,
  plotHeight: number,
): ChartLayout {
  const entries: [string, number][] = [
    ["8", histogram.pairs_8],
    ["7", histogram.pairs_7],
    ["6", histogram.pairs_6],
  ];
  const maxCount = Math.max(1, ...entries.map(([, count]) => count));
  const slot = plotWidth / entries.length;
  const barWidth = slot * 0.6;
  const bars = entries.map(([label, count], i) => {
    const height = (count / maxCount) * plotHeight;
    return {
      label,
      count,
      x: i * slot + (slot - barWidth) / 2,
      y: plotHeight - height,
      width: barWidth,
      height,
    };
  });
  return { bars, maxCount };
}
