import { ApiClient } from "./api.js";
import { PortalController } from "./controller.js";
import type { SortKey } from "./types.js";

// DOM shell: binds the controller to the page. All rendering goes through
// the controller's pure string renderers; this file only wires events.

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

export function startApp(): void {
  const controller = new PortalController(new ApiClient());
  const searchBox = el<HTMLInputElement>("search-box");
  const resultsPane = el<HTMLElement>("results");
  const tablePane = el<HTMLElement>("findings");
  const graphPane = el<HTMLElement>("graph");
  const stepperPane = el<HTMLElement>("stepper");
  const errorPane = el<HTMLElement>("error");
  const titlePane = el<HTMLElement>("selected-title");

  function paint(): void {
    errorPane.innerHTML = controller.renderError();
    resultsPane.innerHTML = controller.renderResults();
    tablePane.innerHTML = controller.renderTable();
    graphPane.innerHTML = controller.renderGraph();
    stepperPane.innerHTML = controller.renderStepper();
    const picked = controller.state.selected;
    titlePane.textContent = picked
      ? `${picked.name} (journal ${picked.journal_id})`
      : "";
  }

  let timer: number | undefined;
  searchBox.addEventListener("input", () => {
    window.clearTimeout(timer);
    timer = window.setTimeout(async () => {
      await controller.search(searchBox.value);
      paint();
    }, 150);
  });

  resultsPane.addEventListener("click", async (event) => {
    const button = (event.target as HTMLElement).closest<HTMLElement>(".result");
    if (!button?.dataset.id) return;
    await controller.select(button.dataset.id);
    paint();
  });

  stepperPane.addEventListener("click", async (event) => {
    const button = (event.target as HTMLElement).closest<HTMLElement>(".step");
    if (!button?.dataset.step) return;
    await controller.stepYear(Number(button.dataset.step));
    paint();
  });

  tablePane.addEventListener("click", (event) => {
    const th = (event.target as HTMLElement).closest<HTMLElement>("th[data-sort]");
    if (!th?.dataset.sort) return;
    controller.setSort(th.dataset.sort as SortKey);
    paint();
  });

  errorPane.addEventListener("click", async (event) => {
    const button = (event.target as HTMLElement).closest<HTMLElement>(".retry");
    if (!button) return;
    await controller.retry();
    paint();
  });

  paint();
}

startApp();
