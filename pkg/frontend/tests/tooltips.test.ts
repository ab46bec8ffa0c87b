// @vitest-environment jsdom
// Rumor tooltips stay invisible until hover or keyboard focus.

import { describe, expect, it } from "vitest";

import {
  bindTooltips,
  RumorRegistry,
  rumors,
  visibleTooltipCount,
} from "../src/tooltips.js";

function mount(html: string): HTMLElement {
  const root = document.createElement("div");
  root.innerHTML = html;
  document.body.appendChild(root);
  return root;
}

describe("rumor registry", () => {
  it("rejects duplicate keywords (each defined exactly once)", () => {
    const registry = new RumorRegistry();
    registry.add({ keyword: "lever", shortDef: "x" });
    expect(() => registry.add({ keyword: "lever", shortDef: "y" })).toThrow();
  });

  it("rejects definitions over 160 characters", () => {
    const registry = new RumorRegistry();
    expect(() =>
      registry.add({ keyword: "long", shortDef: "x".repeat(161) }),
    ).toThrow();
  });

  it("ships a populated default registry", () => {
    expect(rumors.size).toBeGreaterThanOrEqual(8);
    expect(rumors.get("mismanaged waste")?.deepLink).toBeTruthy();
  });
});

describe("tooltip visibility", () => {
  it("renders zero visible tooltips without hover or focus", () => {
    const root = mount(
      `<p>A <span data-rumor="lever">lever</span> edits the
        <span data-rumor="baseline">baseline</span>.</p>`,
    );
    bindTooltips(root);
    expect(root.querySelectorAll(".tooltip").length).toBe(2);
    expect(visibleTooltipCount(root)).toBe(0);
  });

  it("shows on mouseenter, hides on mouseleave", () => {
    const root = mount(`<span data-rumor="lever">lever</span>`);
    bindTooltips(root);
    const keyword = root.querySelector<HTMLElement>(".rumor")!;
    keyword.dispatchEvent(new Event("mouseenter"));
    expect(visibleTooltipCount(root)).toBe(1);
    keyword.dispatchEvent(new Event("mouseleave"));
    expect(visibleTooltipCount(root)).toBe(0);
  });

  it("shows on keyboard focus, hides on blur", () => {
    const root = mount(`<span data-rumor="MT">MT</span>`);
    bindTooltips(root);
    const keyword = root.querySelector<HTMLElement>(".rumor")!;
    keyword.dispatchEvent(new Event("focus"));
    expect(visibleTooltipCount(root)).toBe(1);
    keyword.dispatchEvent(new Event("blur"));
    expect(visibleTooltipCount(root)).toBe(0);
  });

  it("ignores unregistered keywords", () => {
    const root = mount(`<span data-rumor="not-a-term">plain</span>`);
    bindTooltips(root);
    expect(root.querySelectorAll(".tooltip").length).toBe(0);
  });
});
