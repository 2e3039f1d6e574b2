// Thin DOM layer: draws a prepared scene into an <svg> element.

import type { Scene } from "./geometry.js";
import { LABEL_OFFSET } from "./geometry.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

export function renderScene(
  svg: SVGSVGElement,
  scene: Scene,
  seed: string,
  onNodeClick: (member: string) => void,
): void {
  svg.replaceChildren();

  for (const edge of scene.edges) {
    svg.appendChild(
      svgElement("line", {
        x1: String(edge.x1),
        y1: String(edge.y1),
        x2: String(edge.x2),
        y2: String(edge.y2),
        class: "edge",
        "stroke-width": String(edge.width),
      }),
    );
  }

  for (const node of scene.nodes) {
    const group = svgElement("g", {
      class: node.member === seed ? "node seed" : "node",
      "data-member": node.member,
    });
    if (node.degenerate) {
      // zero share after self-citation correction: a vertical line
      group.appendChild(
        svgElement("line", {
          x1: String(node.x),
          y1: String(node.y - node.ry),
          x2: String(node.x),
          y2: String(node.y + node.ry),
          class: "node-degenerate",
        }),
      );
    } else {
      group.appendChild(
        svgElement("ellipse", {
          cx: String(node.x),
          cy: String(node.y),
          rx: String(node.rx),
          ry: String(node.ry),
        }),
      );
    }
    const label = svgElement("text", {
      x: String(node.x),
      y: String(node.y - node.ry - LABEL_OFFSET),
      "text-anchor": "middle",
    });
    label.textContent = node.label;
    group.appendChild(label);
    group.addEventListener("click", () => onNodeClick(node.member));
    svg.appendChild(group);
  }
}
