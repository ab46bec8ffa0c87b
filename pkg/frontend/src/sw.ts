// Service worker entry point; bundled to /sw.js at build time.

import { handleFetch, precache, type CacheLike } from "./swcore.js";

declare const self: ServiceWorkerGlobalScope;

const CACHE_NAME = "policy-lab-v1";

async function openCache(): Promise<CacheLike> {
  const cache = await caches.open(CACHE_NAME);
  return {
    match: (url) => cache.match(url).then((r) => r ?? undefined),
    put: (url, response) => cache.put(url, response),
  };
}

self.addEventListener("install", (event: ExtendableEvent) => {
  event.waitUntil(
    (async () => {
      const cache = await openCache();
      await precache({ cache, networkFetch: (url) => fetch(url) });
      await self.skipWaiting();
    })(),
  );
});

self.addEventListener("activate", (event: ExtendableEvent) => {
  event.waitUntil(self.clients.claim());
});

self.addEventListener("fetch", (event: FetchEvent) => {
  const request = event.request;
  if (new URL(request.url).origin !== self.location.origin) return;
  event.respondWith(
    (async () => {
      const cache = await openCache();
      return handleFetch(request.method, request.url, {
        cache,
        networkFetch: () => fetch(request),
        waitUntil: (work) => event.waitUntil(work),
      });
    })(),
  );
});
