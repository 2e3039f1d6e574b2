// Bootstrap: wires the controls to the controller and paints views.

import { HttpTransport, downloadUrl } from "./api.js";
import { ExplorerController, View } from "./controller.js";
import { buildScene } from "./geometry.js";
import { renderScene } from "./render.js";
import { DEFAULT_THRESHOLD, FALLBACK_THRESHOLD, decodeState, defaultState, encodeState } from "./state.js";
import type { JournalInfo } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const controller = new ExplorerController(new HttpTransport());

const svg = $("map") as unknown as SVGSVGElement;
const searchBox = $<HTMLInputElement>("search");
const searchResults = $<HTMLUListElement>("search-results");
const directionButton = $<HTMLButtonElement>("direction");
const backButton = $<HTMLButtonElement>("back");
const cutoffSlider = $<HTMLInputElement>("cutoff");
const cutoffValue = $<HTMLSpanElement>("cutoff-value");
const customThreshold = $<HTMLInputElement>("threshold-custom");
const banner = $<HTMLDivElement>("banner");
const bannerButton = $<HTMLButtonElement>("banner-apply");
const sharesBody = $<HTMLTableSectionElement>("shares-body");
const summary = $<HTMLParagraphElement>("summary");
const warningsList = $<HTMLUListElement>("warnings");
const factorsButton = $<HTMLButtonElement>("factors-button");
const factorsReport = $<HTMLPreElement>("factors-report");
const downloads = {
  net: $<HTMLAnchorElement>("download-net"),
  dl: $<HTMLAnchorElement>("download-dl"),
  svg: $<HTMLAnchorElement>("download-svg"),
};

function paint(view: View): void {
  const { state, payload } = view;
  renderScene(svg, buildScene(payload), state.seed, (member) => {
    void controller.recenter(member);
  });

  summary.textContent =
    `${payload.seed} — ${payload.direction}, threshold ` +
    `${(state.thresholdFraction * 100).toLocaleString()}%, ` +
    `${payload.members.length} journal(s), grandsum ${payload.provenance.grandsum ?? "?"}`;

  sharesBody.replaceChildren();
  for (const share of payload.shares) {
    const row = document.createElement("tr");
    for (const cell of [
      share.label,
      share.share_incl.toFixed(6),
      share.share_excl.toFixed(6),
      share.self_count === null ? "-" : String(share.self_count),
    ]) {
      const td = document.createElement("td");
      td.textContent = cell;
      row.appendChild(td);
    }
    row.addEventListener("click", () => void controller.recenter(share.member));
    sharesBody.appendChild(row);
  }

  warningsList.replaceChildren();
  for (const warning of payload.warnings) {
    const item = document.createElement("li");
    item.textContent = warning;
    warningsList.appendChild(item);
  }

  banner.hidden = !view.showFallbackBanner;
  backButton.disabled = !controller.history.canGoBack;
  directionButton.textContent =
    state.direction === "citing" ? "viewing: citing → flip to cited" : "viewing: cited → flip to citing";

  for (const format of ["net", "dl", "svg"] as const) {
    downloads[format].setAttribute("href", downloadUrl(state, format));
  }

  cutoffSlider.value = String(state.cosineCutoff);
  cutoffValue.textContent = state.cosineCutoff.toFixed(2);
  const preset = document.querySelector<HTMLInputElement>(
    `input[name="threshold"][value="${state.thresholdFraction}"]`,
  );
  if (preset) {
    preset.checked = true;
  } else {
    $<HTMLInputElement>("threshold-custom-radio").checked = true;
    customThreshold.value = String(state.thresholdFraction);
  }

  factorsReport.textContent = "";
  window.location.hash = encodeState(state);
}

controller.onView = paint;

function showError(error: unknown): void {
  summary.textContent = `error: ${error instanceof Error ? error.message : String(error)}`;
}

function renderSearchResults(journals: JournalInfo[]): void {
  searchResults.replaceChildren();
  for (const journal of journals) {
    const item = document.createElement("li");
    item.textContent = `${journal.label} (cited ${journal.total_cited}, citing ${journal.total_citing})`;
    item.addEventListener("click", () => {
      searchResults.replaceChildren();
      searchBox.value = journal.label;
      const current = controller.current;
      void controller
        .show(current ? { ...current, seed: journal.id } : defaultState(journal.id))
        .catch(showError);
    });
    searchResults.appendChild(item);
  }
}

let searchTimer: ReturnType<typeof setTimeout> | undefined;
searchBox.addEventListener("input", () => {
  clearTimeout(searchTimer);
  const query = searchBox.value.trim();
  if (!query) {
    searchResults.replaceChildren();
    return;
  }
  searchTimer = setTimeout(() => {
    controller.searchJournals(query).then(renderSearchResults).catch(showError);
  }, 150);
});

directionButton.addEventListener("click", () => void controller.flipDirection().catch(showError));
backButton.addEventListener("click", () => void controller.back().catch(showError));
bannerButton.addEventListener("click", () =>
  void controller.applyFallbackThreshold().catch(showError),
);

cutoffSlider.addEventListener("change", () =>
  void controller.applyCutoff(Number(cutoffSlider.value)).catch(showError),
);

for (const radio of document.querySelectorAll<HTMLInputElement>('input[name="threshold"]')) {
  radio.addEventListener("change", () => {
    if (!radio.checked) return;
    const fraction =
      radio.value === "custom" ? Number(customThreshold.value || DEFAULT_THRESHOLD) : Number(radio.value);
    void controller.applyThreshold(fraction).catch(showError);
  });
}
customThreshold.addEventListener("change", () => {
  const fraction = Number(customThreshold.value);
  if (Number.isFinite(fraction) && fraction > 0 && fraction < 1) {
    $<HTMLInputElement>("threshold-custom-radio").checked = true;
    void controller.applyThreshold(fraction).catch(showError);
  }
});

factorsButton.addEventListener("click", () => {
  factorsReport.textContent = "computing…";
  controller
    .fetchFactors()
    .then((payload) => {
      factorsReport.textContent = payload.report;
    })
    .catch((error) => {
      factorsReport.textContent = `factors unavailable: ${
        error instanceof Error ? error.message : String(error)
      }`;
    });
});

window.addEventListener("hashchange", () => {
  const state = decodeState(window.location.hash);
  if (!state) return;
  const current = controller.current;
  if (current && encodeState(current) === encodeState(state)) return;
  void controller.show(state).catch(showError);
});

const initial = decodeState(window.location.hash);
if (initial) {
  void controller.show(initial).catch(showError);
} else {
  summary.textContent = "search for a journal to begin";
}

// threshold preset labels use the shared constants
$<HTMLLabelElement>("threshold-default-label").textContent = `${DEFAULT_THRESHOLD * 100}%`;
$<HTMLLabelElement>("threshold-fallback-label").textContent = `${FALLBACK_THRESHOLD * 100}%`;
