// Hand-rolled SVG polylines; no charting dependency for a line and an axis.

export function polylinePoints(
  values: number[],
  width: number,
  height: number,
  pad = 2,
  range?: [number, number],
): string {
  if (values.length === 0) return "";
  const [min, max] = range ?? [Math.min(...values), Math.max(...values)];
  const span = max - min || 1;
  const innerW = width - 2 * pad;
  const innerH = height - 2 * pad;
  const step = values.length > 1 ? innerW / (values.length - 1) : 0;
  return values
    .map((value, i) => {
      const x = pad + i * step;
      const y = pad + innerH * (1 - (value - min) / span);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
}

export function sparklineSvg(values: number[], width = 120, height = 36): string {
  const points = polylinePoints(values, width, height);
  return (
    `<svg viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" ` +
    `role="img" aria-hidden="true">` +
    `<polyline points="${points}" fill="none" stroke="currentColor" stroke-width="1.5"/>` +
    `</svg>`
  );
}

export function chartSvg(
  seriesByName: Array<{ name: string; values: number[] }>,
  years: number[],
  width = 640,
  height = 260,
): string {
  const all = seriesByName.flatMap((s) => s.values);
  const min = Math.min(0, ...all);
  const max = Math.max(...all, 1);
  const palette = ["#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed", "#0891b2"];
  const lines = seriesByName
    .map((series, i) => {
      const points = polylinePoints(series.values, width, height - 20, 8, [min, max]);
      const color = palette[i % palette.length];
      return `<polyline points="${points}" fill="none" stroke="${color}" stroke-width="2"><title>${series.name}</title></polyline>`;
    })
    .join("");
  const firstYear = years[0] ?? "";
  const lastYear = years[years.length - 1] ?? "";
  return (
    `<svg viewBox="0 0 ${width} ${height}" class="chart" role="img">` +
    lines +
    `<text x="8" y="${height - 4}" class="axis">${firstYear}</text>` +
    `<text x="${width - 40}" y="${height - 4}" class="axis">${lastYear}</text>` +
    `<text x="8" y="14" class="axis">${max.toFixed(1)}</text>` +
    `</svg>`
  );
}
