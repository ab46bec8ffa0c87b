// Offline behavior: cache-first-with-refresh strategy and the offline smoke
// path (one online load, network gone, reload still renders from cache).

import { describe, expect, it } from "vitest";

import {
  handleFetch,
  isCacheable,
  precache,
  PRECACHE_MANIFEST_URL,
  type CacheLike,
  type SwDeps,
} from "../src/swcore.js";

class FakeCache implements CacheLike {
  store = new Map<string, string>();

  async match(url: string): Promise<Response | undefined> {
    const body = this.store.get(url);
    return body === undefined ? undefined : new Response(body);
  }

  async put(url: string, response: Response): Promise<void> {
    this.store.set(url, await response.clone().text());
  }
}

class FakeNetwork {
  online = true;
  requests: string[] = [];
  content = new Map<string, string>();

  fetch = async (url: string): Promise<Response> => {
    this.requests.push(url);
    if (!this.online) throw new TypeError("network unreachable");
    const body = this.content.get(url);
    if (body === undefined) return new Response("not found", { status: 404 });
    return new Response(body);
  };
}

function makeWorld() {
  const cache = new FakeCache();
  const network = new FakeNetwork();
  const pending: Promise<unknown>[] = [];
  const deps: SwDeps = {
    cache,
    networkFetch: network.fetch,
    waitUntil: (work) => pending.push(work),
  };
  network.content.set(
    PRECACHE_MANIFEST_URL,
    JSON.stringify(["/", "/assets/main.js", "/api/vocabulary", "/api/baseline"]),
  );
  network.content.set("/", "<html>shell v1</html>");
  network.content.set("/assets/main.js", "app v1");
  network.content.set("/api/vocabulary", '{"regions":[]}');
  network.content.set("/api/baseline", '{"cells":[1]}');
  return { cache, network, deps, pending };
}

describe("cacheability", () => {
  it("precaches data endpoints and static assets, never other api calls", () => {
    expect(isCacheable("GET", "/styles.css")).toBe(true);
    expect(isCacheable("GET", "/api/vocabulary")).toBe(true);
    expect(isCacheable("GET", "/api/baseline")).toBe(true);
    expect(isCacheable("POST", "/api/simulate")).toBe(false);
    expect(isCacheable("POST", "/api/check")).toBe(false);
    expect(isCacheable("GET", "/api/simulate")).toBe(false);
  });
});

describe("cache first with refresh", () => {
  it("serves the cached copy and revalidates in the background", async () => {
    const { cache, network, deps, pending } = makeWorld();
    await precache(deps);
    network.content.set("/assets/main.js", "app v2");
    network.requests.length = 0;

    const response = await handleFetch("GET", "/assets/main.js", deps);
    expect(await response.text()).toBe("app v1"); // cache answers first
    await Promise.all(pending); // background refresh completes
    expect(network.requests).toContain("/assets/main.js");
    expect(cache.store.get("/assets/main.js")).toBe("app v2"); // next load is fresh
  });

  it("falls through to the network on a cache miss and populates the cache", async () => {
    const { cache, network, deps } = makeWorld();
    network.content.set("/uncached.css", "body{}");
    const response = await handleFetch("GET", "/uncached.css", deps);
    expect(await response.text()).toBe("body{}");
    expect(cache.store.get("/uncached.css")).toBe("body{}");
  });

  it("passes simulate straight to the network, cached nothing", async () => {
    const { cache, network, deps } = makeWorld();
    network.content.set("/api/simulate", "result");
    await handleFetch("POST", "/api/simulate", deps);
    expect(cache.store.has("/api/simulate")).toBe(false);
  });
});

describe("offline smoke", () => {
  it("after one online load, a reload with the network dead still serves the shell and baseline views", async () => {
    const { network, deps, pending } = makeWorld();
    await precache(deps); // the one successful online load
    network.online = false; // kill the network

    for (const url of ["/", "/assets/main.js", "/api/vocabulary", "/api/baseline"]) {
      const response = await handleFetch("GET", url, deps);
      expect(response).toBeDefined();
      expect(await response.text()).toBeTruthy();
    }
    await Promise.allSettled(pending); // background refreshes fail quietly
    // cached copies survive failed revalidation
    const again = await handleFetch("GET", "/", deps);
    expect(await again.text()).toBe("<html>shell v1</html>");
  });

  it("cold start offline propagates the failure (explicit empty-cache screen)", async () => {
    const { network, deps } = makeWorld();
    network.online = false;
    await expect(handleFetch("GET", "/", deps)).rejects.toThrow();
  });

  it("simulate while offline fails without touching cached results", async () => {
    const { cache, network, deps } = makeWorld();
    await precache(deps);
    network.online = false;
    await expect(handleFetch("POST", "/api/simulate", deps)).rejects.toThrow();
    expect(cache.store.get("/api/baseline")).toBe('{"cells":[1]}');
  });
});
