/**
 * Typed client for the session service HTTP API. The backend base URL
 * defaults to same-origin (the service can host this UI under /ui) and can
 * be overridden via window.XAI_BACKEND before the app loads.
 */

export interface ClassificationResult {
  class_index: number;
  label: string;
  confidence: number;
}

export interface ClassificationResponse {
  top: ClassificationResult[];
  model_id: string;
  inference_millis: number;
}

export interface FillSpec {
  kind: "dataset_mean" | "constant_color";
  color?: [number, number, number] | null;
}

export interface InteractionRecord {
  iteration: number;
  mask_hash: string;
  coverage: number;
  response: ClassificationResponse;
  fill: FillSpec;
  timestamp: string;
}

export interface SessionInfo {
  session_id: string;
  image_ref: { kind: string; locator: string; sha256: string };
  created_at: string;
  width: number;
  height: number;
  records: InteractionRecord[];
}

export interface CreateSessionResponse {
  session_id: string;
  image_url: string;
  width: number;
  height: number;
  baseline: ClassificationResponse;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let detail = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return this.baseUrl + path;
  }

  async listCorpus(): Promise<string[]> {
    const response = await fetch(this.url("/corpus"));
    await raiseForStatus(response);
    return (await response.json()).selectors;
  }

  async createSession(selector: string, k = 1): Promise<CreateSessionResponse> {
    const response = await fetch(this.url("/sessions"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ source: "local_corpus", selector, k }),
    });
    await raiseForStatus(response);
    return response.json();
  }

  imageUrl(session: CreateSessionResponse): string {
    return this.url(session.image_url);
  }

  async classifyMask(
    sessionId: string,
    maskPng: Uint8Array,
    fill: FillSpec = { kind: "dataset_mean" },
    k = 1,
  ): Promise<InteractionRecord> {
    const form = new FormData();
    form.append("mask", new Blob([maskPng.slice().buffer], { type: "image/png" }), "mask.png");
    form.append("params", JSON.stringify({ fill, k }));
    const response = await fetch(this.url(`/sessions/${sessionId}/classify`), {
      method: "POST",
      body: form,
    });
    await raiseForStatus(response);
    return response.json();
  }

  async getSession(sessionId: string): Promise<SessionInfo> {
    const response = await fetch(this.url(`/sessions/${sessionId}`));
    await raiseForStatus(response);
    return response.json();
  }
}
