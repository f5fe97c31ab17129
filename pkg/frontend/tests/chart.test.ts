import test from "node:test";
import assert from "node:assert/strict";

import { histogramBars } from "../src/chart.js";

test("zeroed histogram yields three zero-height bars", () => {
  const layout = histogramBars(
    { pairs_8: 0, pairs_7: 0, pairs_6: 0, total_domains: 0 },
    300,
    150,
  );
  assert.equal(layout.bars.length, 3);
  for (const bar of layout.bars) {
    assert.equal(bar.height, 0);
    assert.equal(bar.y, 150);
  }
});

test("bars scale to the maximum count", () => {
  const layout = histogramBars(
    { pairs_8: 2, pairs_7: 10, pairs_6: 5, total_domains: 432 },
    300,
    200,
  );
  const [b8, b7, b6] = layout.bars;
  assert.equal(layout.maxCount, 10);
  assert.equal(b7.height, 200);
  assert.equal(b8.height, 40);
  assert.equal(b6.height, 100);
  assert.deepEqual(
    layout.bars.map((b) => b.label),
    ["8", "7", "6"],
  );
});

test("bars sit inside the plot area without overlap", () => {
  const layout = histogramBars(
    { pairs_8: 1, pairs_7: 1, pairs_6: 1, total_domains: 3 },
    300,
    100,
  );
  let lastRight = -1;
  for (const bar of layout.bars) {
    assert.ok(bar.x > lastRight);
    assert.ok(bar.x + bar.width <= 300 + 1e-9);
    lastRight = bar.x + bar.width;
  }
});
