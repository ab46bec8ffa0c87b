// Cache strategy for the service worker, kept dependency-injectable so the
// offline behavior is testable without a browser.
//
// Strategy: cache first with refresh. Cached responses are always served
// when present; every cache hit still kicks off a background revalidation
// that updates the cache for the next load. Cache misses go to the network
// and populate the cache. Non-GET traffic (simulate, check) is never cached:
// the page itself degrades to an explicit offline state instead of showing
// fabricated results.

export interface CacheLike {
  match(url: string): Promise<Response | undefined>;
  put(url: string, response: Response): Promise<void>;
}

export interface SwDeps {
  cache: CacheLike;
  networkFetch(url: string): Promise<Response>;
  waitUntil?(work: Promise<unknown>): void;
}

export const PRECACHE_MANIFEST_URL = "/precache-manifest.json";

export function isCacheable(method: string, url: string): boolean {
  if (method !== "GET") return false;
  const { pathname } = new URL(url, "http://sw.local");
  if (pathname === "/api/vocabulary" || pathname === "/api/baseline") return true;
  return !pathname.startsWith("/api/");
}

export async function precache(deps: SwDeps): Promise<string[]> {
  const manifestResponse = await deps.networkFetch(PRECACHE_MANIFEST_URL);
  const urls = (await manifestResponse.clone().json()) as string[];
  await deps.cache.put(PRECACHE_MANIFEST_URL, manifestResponse.clone());
  for (const url of urls) {
    const response = await deps.networkFetch(url);
    if (response.ok) await deps.cache.put(url, response);
  }
  return urls;
}

async function refresh(url: string, deps: SwDeps): Promise<void> {
  try {
    const fresh = await deps.networkFetch(url);
    if (fresh.ok) await deps.cache.put(url, fresh);
  } catch {
    // offline: the cached copy stays authoritative
  }
}

export async function handleFetch(
  method: string,
  url: string,
  deps: SwDeps,
): Promise<Response> {
  if (!isCacheable(method, url)) {
    return deps.networkFetch(url);
  }
  const cached = await deps.cache.match(url);
  if (cached) {
    const revalidation = refresh(url, deps);
    deps.waitUntil?.(revalidation);
    return cached;
  }
  const response = await deps.networkFetch(url);
  if (response.ok) await deps.cache.put(url, response.clone());
  return response;
}
