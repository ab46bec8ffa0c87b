// Rumor tooltips: unobtrusive keyword definitions that never block the flow.
//
// Definitions render only on hover or keyboard focus and vanish on leave, so
// readers in a hurry pass straight by; each one may deep-link into the
// details tab for those who want the longer road.

export interface Rumor {
  keyword: string;
  shortDef: string; // <= 160 chars
  deepLink?: string;
}

export class RumorRegistry {
  private readonly byKeyword = new Map<string, Rumor>();

  add(rumor: Rumor) {
    if (this.byKeyword.has(rumor.keyword)) {
      throw new Error(`keyword defined twice: ${rumor.keyword}`);
    }
    if (rumor.shortDef.length > 160) {
      throw new Error(`definition too long for ${rumor.keyword}`);
    }
    this.byKeyword.set(rumor.keyword, rumor);
  }

  get(keyword: string): Rumor | undefined {
    return this.byKeyword.get(keyword);
  }

  get size(): number {
    return this.byKeyword.size;
  }
}

export const rumors = new RumorRegistry();
for (const [keyword, shortDef, deepLink] of [
  ["lever", "A tunable policy intervention: a few inputs plus a small script that edits the projection.", undefined],
  ["scenario", "The ordered set of levers and chosen values currently applied to the baseline.", undefined],
  ["mismanaged waste", "Plastic waste that escapes managed collection: dumped, openly burned or leaked into the environment.", "#details:eol"],
  ["EOL fates", "Where waste ends up each year: recycling, incineration, landfill or mismanaged.", "#details:eol"],
  ["lifetime", "Mean years a product stays in use before becoming waste; consumption feeds waste after this delay.", undefined],
  ["mass balance", "Every simulated year, the four EOL fates are rebalanced to sum exactly to generated waste.", undefined],
  ["MT", "Million metric tonnes per year.", undefined],
  ["baseline", "The untouched projection the scenario is measured against.", undefined],
  ["phase-in", "change ... over ramps an amount linearly between a start and an end year.", undefined],
  ["proportional distribution", "distribute ... across splits an amount over targets in proportion to their current values.", undefined],
] as Array<[string, string, string | undefined]>) {
  rumors.add({ keyword, shortDef, deepLink });
}

// Wrap registered keywords in the container with hover/focus-only tooltips.
export function bindTooltips(container: HTMLElement, registry: RumorRegistry = rumors) {
  for (const element of Array.from(container.querySelectorAll<HTMLElement>("[data-rumor]"))) {
    const keyword = element.dataset.rumor ?? "";
    const rumor = registry.get(keyword);
    if (!rumor) continue;
    element.classList.add("rumor");
    element.setAttribute("tabindex", "0");

    const tip = document.createElement("span");
    tip.className = "tooltip";
    tip.setAttribute("role", "tooltip");
    tip.hidden = true;
    tip.textContent = rumor.shortDef;
    if (rumor.deepLink) {
      const link = document.createElement("a");
      link.href = rumor.deepLink;
      link.textContent = " more";
      tip.appendChild(link);
    }
    element.appendChild(tip);

    const show = () => {
      tip.hidden = false;
    };
    const hide = () => {
      tip.hidden = true;
    };
    element.addEventListener("mouseenter", show);
    element.addEventListener("mouseleave", hide);
    element.addEventListener("focus", show);
    element.addEventListener("blur", hide);
  }
}

export function visibleTooltipCount(root: ParentNode): number {
  return Array.from(root.querySelectorAll<HTMLElement>(".tooltip")).filter(
    (tip) => !tip.hidden,
  ).length;
}
