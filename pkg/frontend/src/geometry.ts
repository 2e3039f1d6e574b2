// Presentation scaling only: the payload's numbers are never recombined,
// each share/cosine maps directly to a pixel size.

import type { EnvironmentPayload } from "./types.js";

export const CANVAS_WIDTH = 900;
export const CANVAS_HEIGHT = 620;
export const CANVAS_MARGIN = 70;
export const EDGE_WIDTH_SCALE = 4; // stroke width = cosine * scale
export const LABEL_OFFSET = 5;

export interface NodeGlyph {
  member: string;
  label: string;
  x: number;
  y: number;
  rx: number; // horizontal radius, from the share excluding self-citations
  ry: number; // vertical radius, from the share including them
  degenerate: boolean; // zero excluding-share: drawn as a vertical line
}

export interface EdgeGlyph {
  source: string;
  target: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  width: number;
}

export interface Scene {
  nodes: NodeGlyph[];
  edges: EdgeGlyph[];
}

/** Ellipse radii for one node; both axes share a single scale factor so the
 * rendered axis ratio equals share_excl / share_incl exactly. */
export function ellipseRadii(
  shareIncl: number,
  shareExcl: number,
  canvasHeight: number = CANVAS_HEIGHT,
): { rx: number; ry: number; degenerate: boolean } {
  const scale = canvasHeight / 200; // percent/2 of canvas height
  return {
    rx: shareExcl * scale,
    ry: shareIncl * scale,
    degenerate: shareExcl === 0,
  };
}

export function edgeWidth(cosine: number): number {
  return cosine * EDGE_WIDTH_SCALE;
}

function toCanvas(x: number, y: number): { px: number; py: number } {
  return {
    px: CANVAS_MARGIN + x * (CANVAS_WIDTH - 2 * CANVAS_MARGIN),
    py: CANVAS_MARGIN + (1 - y) * (CANVAS_HEIGHT - 2 * CANVAS_MARGIN),
  };
}

/** Pure translation of a payload into drawable glyphs. */
export function buildScene(payload: EnvironmentPayload): Scene {
  const positions = new Map<string, { px: number; py: number }>();
  const coordinates = payload.coordinates ?? [];
  for (const coordinate of coordinates) {
    positions.set(coordinate.member, toCanvas(coordinate.x, coordinate.y));
  }
  // without layout coordinates, spread members on a circle (pure presentation)
  if (positions.size === 0) {
    payload.members.forEach((member, i) => {
      const angle = (2 * Math.PI * i) / payload.members.length;
      positions.set(member, toCanvas(0.5 + 0.4 * Math.cos(angle), 0.5 + 0.4 * Math.sin(angle)));
    });
  }

  const nodes: NodeGlyph[] = payload.shares.map((share, i) => {
    const at = positions.get(share.member)!;
    const { rx, ry, degenerate } = ellipseRadii(share.share_incl, share.share_excl);
    return {
      member: share.member,
      label: payload.labels[i],
      x: at.px,
      y: at.py,
      rx,
      ry,
      degenerate,
    };
  });

  const edges: EdgeGlyph[] = payload.edges.map((edge) => {
    const a = positions.get(edge.source)!;
    const b = positions.get(edge.target)!;
    return {
      source: edge.source,
      target: edge.target,
      x1: a.px,
      y1: a.py,
      x2: b.px,
      y2: b.py,
      width: edgeWidth(edge.cosine),
    };
  });

  return { nodes, edges };
}
