/** Browser entry point: wire the app to fetch and real timers. */

import { App, Http } from "./app.js";
import { mount } from "./dom.js";

const http: Http = async (req) => {
  const res = await fetch(req.path, {
    method: req.method,
    headers:
      req.body !== undefined ? { "content-type": "application/json" } : {},
    body: req.body !== undefined ? JSON.stringify(req.body) : undefined,
  });
  let body: unknown = null;
  try {
    body = await res.json();
  } catch {
    body = null;
  }
  return { status: res.status, body };
};

const delay = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

const root = document.getElementById("app");
if (root) mount(root, new App(http, delay));
