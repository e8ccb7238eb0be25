/** Browser binding: materialize the element tree and wire control events. */

import { SearchCfg, Weights } from "./api.js";
import { App, UiState } from "./app.js";
import { ControlEvent } from "./controls.js";
import { render, VNode } from "./render.js";

function readNumber(root: HTMLElement, name: string): number {
  const input = root.querySelector<HTMLInputElement>(
    `[data-control="config-${name}"]`,
  );
  return Number(input?.value ?? 0);
}

function inputEvent(root: HTMLElement, control: string): ControlEvent | null {
  if (control === "align") {
    const textarea = root.querySelector<HTMLTextAreaElement>(
      '[data-control="texts"]',
    );
    const texts = (textarea?.value ?? "")
      .split("\n")
      .filter((line) => line.trim().length > 0);
    return texts.length > 0 ? { kind: "align", texts } : null;
  }
  if (control === "config-apply") {
    const weights: Weights = {
      w_col: readNumber(root, "w_col"),
      w_fcol: readNumber(root, "w_fcol"),
      w_embed: readNumber(root, "w_embed"),
      w_bias: readNumber(root, "w_bias"),
    };
    const searchCfg: SearchCfg = {
      greedy_prob: readNumber(root, "greedy_prob"),
      stall_window: readNumber(root, "stall_window"),
      max_steps: 50,
      max_shift_distance: readNumber(root, "max_shift_distance"),
      seed: readNumber(root, "seed"),
    };
    return { kind: "config", weights, searchCfg };
  }
  if (control === "load") {
    const raw = window.prompt("Paste a saved alignment document:");
    if (!raw) return null;
    try {
      return { kind: "load", document: JSON.parse(raw) };
    } catch {
      window.alert("Not valid JSON.");
      return null;
    }
  }
  return null;
}

function materialize(
  node: VNode,
  root: HTMLElement,
  dispatch: (event: ControlEvent) => void,
): HTMLElement {
  const el = document.createElement(node.tag);
  for (const [name, value] of Object.entries(node.attrs)) {
    if (typeof value === "boolean") {
      if (value) el.setAttribute(name, "");
      if (name === "disabled") (el as HTMLButtonElement).disabled = value;
      if (name === "checked") (el as HTMLInputElement).checked = value;
    } else {
      el.setAttribute(name, String(value));
      if (name === "value") (el as HTMLInputElement).value = String(value);
    }
  }
  for (const child of node.children) {
    if (typeof child === "string") {
      el.appendChild(document.createTextNode(child));
    } else {
      el.appendChild(materialize(child, root, dispatch));
    }
  }
  const fire = () => {
    if (node.event) {
      dispatch(node.event);
    } else if (node.control) {
      const event = inputEvent(root, node.control);
      if (event) dispatch(event);
    }
  };
  if (node.event || node.control) {
    el.addEventListener(node.tag === "input" ? "change" : "click", fire);
  }
  return el;
}

export function mount(root: HTMLElement, app: App): void {
  let savedShown: unknown = null;
  const redraw = (state: UiState) => {
    const keep = root.querySelector<HTMLTextAreaElement>(
      '[data-control="texts"]',
    )?.value;
    root.replaceChildren(
      materialize(render(state), root, (event) => void app.handle(event)),
    );
    const textarea = root.querySelector<HTMLTextAreaElement>(
      '[data-control="texts"]',
    );
    if (textarea && keep !== undefined) textarea.value = keep;
    if (state.savedDocument && state.savedDocument !== savedShown) {
      savedShown = state.savedDocument;
      window.prompt(
        "Copy the saved alignment document:",
        JSON.stringify(state.savedDocument),
      );
    }
  };
  app.onChange = redraw;
  redraw(app.state);
}
